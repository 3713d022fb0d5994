#include <catch2/catch_amalgamated.hpp>

#include "zsum/semigroup.hpp"

using namespace zsum;

TEST_CASE("construction validates parameters") {
  CHECK_NOTHROW(make_semigroup(1, 1));
  CHECK_NOTHROW(make_semigroup(7, 2));
  CHECK_THROWS_AS(make_semigroup(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_semigroup(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_semigroup(-1, 3), std::invalid_argument);
}

TEST_CASE("order and group detection") {
  CHECK(make_semigroup(1, 5).order() == 5);
  CHECK(make_semigroup(2, 2).order() == 3);
  CHECK(make_semigroup(7, 2).order() == 8);
  CHECK(make_semigroup(1, 5).is_group());
  CHECK_FALSE(make_semigroup(2, 5).is_group());
}

TEST_CASE("element validation") {
  auto S = make_semigroup(2, 2);
  CHECK(S.element(3).ind == 3);
  CHECK_THROWS_AS(S.element(0), std::invalid_argument);
  CHECK_THROWS_AS(S.element(4), std::invalid_argument);
}

TEST_CASE("addition wraps into the cycle part") {
  auto S = make_semigroup(2, 2);
  CHECK(S.add(S.element(1), S.element(1)).ind == 2);
  CHECK(S.add(S.element(2), S.element(2)).ind == 2);  // 4 wraps to 2
  CHECK(S.add(S.element(2), S.element(3)).ind == 3);
  CHECK(S.add(S.element(3), S.element(3)).ind == 2);  // 6 wraps to 2

  auto G = make_semigroup(1, 4);
  CHECK(G.add(G.element(1), G.element(3)).ind == 4);
  CHECK(G.add(G.element(4), G.element(4)).ind == 4);  // identity is absorbingly even
  CHECK(G.add(G.element(2), G.element(3)).ind == 1);  // 5 wraps to 1
}

TEST_CASE("addition is associative and commutative on small tables") {
  for (std::int64_t k = 1; k <= 4; ++k) {
    for (std::int64_t n = 1; n <= 4; ++n) {
      auto S = make_semigroup(k, n);
      for (std::int64_t a = 1; a <= S.order(); ++a)
        for (std::int64_t b = 1; b <= S.order(); ++b) {
          CHECK(S.add(S.element(a), S.element(b)).ind ==
                S.add(S.element(b), S.element(a)).ind);
          for (std::int64_t c = 1; c <= S.order(); ++c) {
            auto left = S.add(S.add(S.element(a), S.element(b)), S.element(c));
            auto right = S.add(S.element(a), S.add(S.element(b), S.element(c)));
            CHECK(left.ind == right.ind);
          }
        }
    }
  }
}

TEST_CASE("idempotent index closed form and uniqueness") {
  CHECK(make_semigroup(1, 4).idempotent_index() == 4);
  CHECK(make_semigroup(2, 2).idempotent_index() == 2);
  CHECK(make_semigroup(5, 3).idempotent_index() == 6);
  CHECK(make_semigroup(7, 2).idempotent_index() == 8);
  CHECK(make_semigroup(3, 4).idempotent_index() == 4);
  CHECK(make_semigroup(13, 2).idempotent_index() == 14);

  for (std::int64_t k = 1; k <= 6; ++k) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      auto S = make_semigroup(k, n);
      std::int64_t idem = S.idempotent_index();
      // the claimed index is idempotent and is the only one
      for (std::int64_t a = 1; a <= S.order(); ++a) {
        bool self = S.add(S.element(a), S.element(a)).ind == a;
        CHECK(self == (a == idem));
      }
      // it is the unique multiple of n in the cycle index window
      CHECK(idem % n == 0);
      CHECK(idem >= k);
      CHECK(idem <= k + n - 1);
    }
  }
}

TEST_CASE("identity behavior in the group case") {
  auto G = make_semigroup(1, 6);
  auto e = G.element(G.idempotent_index());
  for (std::int64_t a = 1; a <= G.order(); ++a)
    CHECK(G.add(G.element(a), e).ind == a);
}

TEST_CASE("psi is additive onto residues") {
  for (std::int64_t k = 1; k <= 5; ++k) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      auto S = make_semigroup(k, n);
      for (std::int64_t a = 1; a <= S.order(); ++a) {
        CHECK(S.psi(S.element(a)).value == a % n);
        for (std::int64_t b = 1; b <= S.order(); ++b) {
          auto lhs = S.psi(S.add(S.element(a), S.element(b))).value;
          auto rhs = (S.psi(S.element(a)).value + S.psi(S.element(b)).value) % n;
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("order cap is enforced") {
  CHECK_THROWS_AS(make_semigroup(1, std::int64_t{1} << 40), cap_exceeded);
}
