#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "zsum/invariants.hpp"
#include "zsum/smoothness.hpp"

using namespace zsum;

namespace {

// Re-validate a certificate from scratch: coefficients must be the sorted
// images of the (signed) terms under the inverse generator, sum below n,
// and cover an initial segment.
bool certificate_valid(const ResidueSequence& T, const SmoothCertificate& cert,
                       bool expect_signs) {
  const std::int64_t n = T.n();
  if (std::gcd(cert.generator, n) != 1) return false;
  if (expect_signs && cert.signs.size() != T.size()) return false;
  if (!expect_signs && !cert.signs.empty()) return false;
  std::int64_t gi = detail::mod_inverse(cert.generator, n);
  std::vector<std::int64_t> image;
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::int64_t t = T.terms()[i];
    if (expect_signs && cert.signs[i] == -1) t = (n - t) % n;
    image.push_back(t % n * gi % n);
  }
  std::sort(image.begin(), image.end());
  if (image != cert.coefficients) return false;
  std::int64_t total = std::accumulate(image.begin(), image.end(), std::int64_t{0});
  if (total >= n) return false;
  return detail::covers_initial_segment(image);
}

}  // namespace

TEST_CASE("initial segment coverage on integer sequences") {
  CHECK(is_one_smooth(IntSequence({1, 1, 2, 3})).has_value());
  CHECK(is_one_smooth(IntSequence({1})).has_value());
  CHECK(is_one_smooth(IntSequence({1, 2, 4})).has_value());
  CHECK_FALSE(is_one_smooth(IntSequence({1, 3})).has_value());
  CHECK_FALSE(is_one_smooth(IntSequence({2})).has_value());
  CHECK_FALSE(is_one_smooth(IntSequence(std::vector<std::int64_t>{})).has_value());
}

TEST_CASE("coverage certificate equals subset sums filling an interval") {
  for_each_multiset(6, 4, [&](const std::vector<std::int64_t>& t) {
    std::vector<std::int64_t> terms;
    for (auto v : t) terms.push_back(v + 1);
    IntSequence T(terms);
    auto sums = subsums(T);
    std::int64_t total = sigma(T);
    bool interval = true;
    for (std::int64_t s = 1; s <= total; ++s)
      if (!sums.count(s)) interval = false;
    CHECK(is_one_smooth(T).has_value() == interval);
  });
}

TEST_CASE("generator certificates on residue sequences") {
  CHECK_FALSE(is_g_smooth(ResidueSequence(7, {2, 6}), 2).has_value());
  auto c = is_g_smooth(ResidueSequence(7, {2, 4}), 2);
  REQUIRE(c.has_value());
  CHECK(c->generator == 2);
  CHECK(c->coefficients == std::vector<std::int64_t>{1, 2});
  CHECK(certificate_valid(ResidueSequence(7, {2, 4}), *c, false));
  CHECK_THROWS_AS(is_g_smooth(ResidueSequence(6, {1}), 2), std::invalid_argument);
  CHECK_THROWS_AS(is_g_smooth(ResidueSequence(6, {1}), 0), std::invalid_argument);
  // a term divisible by n blocks every certificate
  CHECK_FALSE(is_g_smooth(ResidueSequence(5, {0, 1}), 1).has_value());
}

TEST_CASE("generator search returns the least certifying unit") {
  auto c = find_smooth_generator(ResidueSequence(7, {2, 4}));
  REQUIRE(c.has_value());
  CHECK(c->generator == 2);
  // (1,2) over Z7 is certified already by 1
  auto d = find_smooth_generator(ResidueSequence(7, {1, 2}));
  REQUIRE(d.has_value());
  CHECK(d->generator == 1);
  CHECK_FALSE(find_smooth_generator(ResidueSequence(7, {2, 6})).has_value());
  CHECK_FALSE(find_smooth_generator(ResidueSequence(4, {})).has_value());
}

TEST_CASE("signed certificates extend unsigned ones") {
  for (std::int64_t n = 2; n <= 8; ++n) {
    for_each_multiset(n, 3, [&](const std::vector<std::int64_t>& t) {
      ResidueSequence T(n, t);
      if (find_smooth_generator(T))
        CHECK(find_signed_smooth_generator(T).has_value());
    });
  }
}

TEST_CASE("signed certificate search finds sign patterns") {
  // (2,2,2,3) over Z8: negating the three 2s under generator 3 works
  ResidueSequence T(8, {2, 2, 2, 3});
  CHECK_FALSE(find_smooth_generator(T).has_value());
  auto c = find_signed_smooth_generator(T);
  REQUIRE(c.has_value());
  CHECK(c->generator == 3);
  CHECK(c->coefficients == std::vector<std::int64_t>{1, 2, 2, 2});
  CHECK(certificate_valid(T, *c, true));
}

TEST_CASE("sequences with no signed certificate for any unit") {
  CHECK_FALSE(find_signed_smooth_generator(ResidueSequence(8, {1, 5, 6, 6})).has_value());
  CHECK_FALSE(find_signed_smooth_generator(ResidueSequence(8, {1, 1, 4, 5})).has_value());
  CHECK_FALSE(find_signed_smooth_generator(ResidueSequence(6, {2, 2, 3})).has_value());
  CHECK_FALSE(find_signed_smooth_generator(ResidueSequence(5, {0, 1})).has_value());
  CHECK_FALSE(find_signed_smooth_generator(ResidueSequence(5, {})).has_value());
}

TEST_CASE("signed certificates verified mechanically on a sweep") {
  for (std::int64_t n = 2; n <= 9; ++n) {
    for (std::int64_t len = 1; len <= 3; ++len) {
      for_each_multiset(n, len, [&](const std::vector<std::int64_t>& t) {
        ResidueSequence T(n, t);
        if (auto c = find_signed_smooth_generator(T))
          CHECK(certificate_valid(T, *c, true));
      });
    }
  }
}

TEST_CASE("union with a small-sum block preserves coverage") {
  // if H1 covers an initial segment and sigma(H2) <= sigma(H1) + 1,
  // the union covers as well
  std::vector<std::vector<std::int64_t>> pool;
  for (std::int64_t len = 1; len <= 3; ++len)
    for_each_multiset(5, len, [&](const std::vector<std::int64_t>& t) {
      std::vector<std::int64_t> terms;
      for (auto v : t) terms.push_back(v + 1);
      pool.push_back(terms);
    });
  for (const auto& h1 : pool) {
    IntSequence H1(h1);
    if (!is_one_smooth(H1)) continue;
    for (const auto& h2 : pool) {
      IntSequence H2(h2);
      if (sigma(H2) > sigma(H1) + 1) continue;
      std::vector<std::int64_t> merged(h1);
      merged.insert(merged.end(), h2.begin(), h2.end());
      CHECK(is_one_smooth(IntSequence(merged)).has_value());
    }
  }
}

TEST_CASE("zero-sum-free certified sequences carry many top generators") {
  // long zero-sum-free sequences are certified, with the certifying value
  // appearing at least 2|T| - n + 1 times
  for (std::int64_t n = 3; n <= 10; ++n) {
    enumerate_zero_sum_free(n, [&](const std::vector<std::int64_t>& seq) {
      auto len = static_cast<std::int64_t>(seq.size());
      if (len < n / 2 + 1) return;
      auto c = find_smooth_generator(ResidueSequence(n, seq));
      REQUIRE(c.has_value());
      std::int64_t ones = 0;
      for (auto v : c->coefficients)
        if (v == 1) ++ones;
      CHECK(ones >= 2 * len - n + 1);
    });
  }
}

TEST_CASE("largest signed certified subsequence length") {
  CHECK(max_signed_smooth_sub_length(ResidueSequence(4, {1, 2})) == 2);
  CHECK(max_signed_smooth_sub_length(ResidueSequence(4, {})) == 0);
  CHECK(max_signed_smooth_sub_length(ResidueSequence(4, {0, 0})) == 0);
  CHECK(max_signed_smooth_sub_length(ResidueSequence(6, {2, 2, 3})) == 0);
  CHECK(max_signed_smooth_sub_length(ResidueSequence(8, {2, 2, 2, 3})) == 4);
  CHECK(max_signed_smooth_sub_length(ResidueSequence(8, {1, 1, 4, 5})) == 3);
  // a certified prefix stays certified inside a longer sequence
  CHECK(max_signed_smooth_sub_length(ResidueSequence(5, {1, 1, 0, 0})) == 2);
}

TEST_CASE("minimal sum of uncovered sequences") {
  // every sequence failing coverage has sum at least twice its length, with
  // equality only for 1...1,(l+1) and 2...2
  for (std::int64_t len = 1; len <= 5; ++len) {
    for_each_multiset(2 * len, len, [&](const std::vector<std::int64_t>& t) {
      std::vector<std::int64_t> terms;
      for (auto v : t) terms.push_back(v + 1);
      IntSequence T(terms);
      if (is_one_smooth(T)) return;
      std::int64_t total = sigma(T);
      CHECK(total >= 2 * len);
      if (total == 2 * len) {
        std::vector<std::int64_t> fam1(static_cast<std::size_t>(len - 1), 1);
        fam1.push_back(len + 1);
        std::vector<std::int64_t> fam2(static_cast<std::size_t>(len), 2);
        bool is_family = T.terms() == fam1 || T.terms() == fam2;
        CHECK(is_family);
      }
    });
  }
}

TEST_CASE("weighted decomposition search on pinned instances") {
  {
    auto d = theorem_b_decompose(ResidueSequence(5, {1, 1, 1, 1}), 1);
    REQUIRE(d.has_value());
    CHECK(d->generator == 1);
    CHECK(d->u == 4);
    CHECK(d->v == 0);
    CHECK(d->xs.empty());
    CHECK(d->ys.empty());
    CHECK(check_theorem_b_clauses(ResidueSequence(5, {1, 1, 1, 1}), 1, *d));
  }
  {
    auto d = theorem_b_decompose(ResidueSequence(5, {2, 2, 2, 2}), 1);
    REQUIRE(d.has_value());
    CHECK(d->generator == 2);
    CHECK(d->u == 4);
    CHECK(check_theorem_b_clauses(ResidueSequence(5, {2, 2, 2, 2}), 1, *d));
  }
  {
    // no decomposition exists here: the lone large weight always overshoots
    auto d = theorem_b_decompose(ResidueSequence(6, {1, 1, 1, 3, 0}), 2);
    CHECK_FALSE(d.has_value());
  }
  CHECK_THROWS_AS(theorem_b_decompose(ResidueSequence(8, {1}), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem_b_decompose(ResidueSequence(8, {1}), 0),
                  std::invalid_argument);
}

TEST_CASE("clause checker rejects tampering") {
  ResidueSequence T(5, {1, 1, 1, 1});
  auto d = theorem_b_decompose(T, 1).value();
  auto bad = d;
  bad.u = 3;
  CHECK_FALSE(check_theorem_b_clauses(T, 1, bad));
  bad = d;
  bad.generator = 2;
  CHECK_FALSE(check_theorem_b_clauses(T, 1, bad));
  bad = d;
  bad.ys.push_back(1);
  CHECK_FALSE(check_theorem_b_clauses(T, 1, bad));
  bad = d;
  bad.xs.push_back(0);
  CHECK_FALSE(check_theorem_b_clauses(T, 1, bad));
}

TEST_CASE("length caps refuse oversized searches") {
  std::vector<std::int64_t> big(30, 1);
  CHECK_THROWS_AS(max_signed_smooth_sub_length(ResidueSequence(64, big)), cap_exceeded);
  CHECK_THROWS_AS(is_signed_g_smooth(ResidueSequence(64, big), 1), cap_exceeded);
}
