#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "zsum/config.hpp"
#include "zsum/count.hpp"
#include "zsum/semigroup.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Subsequence counting. Subsequences are index subsets of the term positions,
// so every count below weights a repeated term by its multiplicity. The empty
// subset has a sum only in the group case (k == 1), where it sums to the
// identity, which is the idempotent.

namespace detail {

// One pass of the element-state DP: cnt[v] = number of nonempty position
// subsets of the terms seen so far whose fold equals the element of index v.
// Exact because the fold of a subset is independent of processing order.
template <class C>
std::vector<C> element_dp(const CyclicSemigroup& S,
                          const std::vector<std::int64_t>& inds) {
  std::vector<C> cnt(static_cast<std::size_t>(S.order()) + 1, C(0));
  for (auto ind : inds) {
    Element a = S.element(ind);
    std::vector<C> next = cnt;
    for (std::int64_t v = 1; v <= S.order(); ++v) {
      if (cnt[static_cast<std::size_t>(v)] == C(0)) continue;
      std::int64_t w = S.add(Element{v}, a).ind;
      next[static_cast<std::size_t>(w)] += cnt[static_cast<std::size_t>(v)];
    }
    next[static_cast<std::size_t>(a.ind)] += C(1);
    cnt = std::move(next);
  }
  return cnt;
}

// uint64 is safe whenever every state count is bounded by 2^len <= 2^62.
inline bool fits_u64(std::size_t len) { return len <= 62; }

}  // namespace detail

// Number of position subsets of T whose sum lies in X (elements given by
// index). include_empty admits the empty subset, which contributes exactly
// when k == 1 and the idempotent is in X.
inline Count count_with_sum_in(const CyclicSemigroup& S,
                               const SemigroupSequence& T,
                               const std::set<std::int64_t>& X,
                               bool include_empty) {
  for (auto x : X) S.element(x);
  Count total(0);
  if (detail::fits_u64(T.size())) {
    auto cnt = detail::element_dp<std::uint64_t>(S, T.inds());
    for (auto x : X) total += cnt[static_cast<std::size_t>(x)];
  } else {
    auto cnt = detail::element_dp<Count>(S, T.inds());
    for (auto x : X) total += cnt[static_cast<std::size_t>(x)];
  }
  if (include_empty && S.is_group() && X.count(S.idempotent_index())) total += 1;
  return total;
}

// N(T; e): position subsets summing to the idempotent, empty subset included
// in the group case.
inline Count count_idempotent_sum(const CyclicSemigroup& S,
                                  const SemigroupSequence& T) {
  return count_with_sum_in(S, T, {S.idempotent_index()}, true);
}

// Independent oracle: walks all 2^len position subsets.
inline Count brute_force_count(const CyclicSemigroup& S,
                               const SemigroupSequence& T,
                               const std::set<std::int64_t>& X,
                               bool include_empty) {
  if (T.size() > static_cast<std::size_t>(caps().brute_force_max_len))
    throw cap_exceeded("brute_force_count: length exceeds cap");
  for (auto x : X) S.element(x);
  const auto& inds = T.inds();
  Count total(0);
  std::uint64_t limit = std::uint64_t{1} << inds.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (mask == 0) {
      if (include_empty && S.is_group() && X.count(S.idempotent_index()))
        total += 1;
      continue;
    }
    bool have = false;
    Element acc{1};
    for (std::size_t i = 0; i < inds.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      Element a = S.element(inds[i]);
      acc = have ? S.add(acc, a) : a;
      have = true;
    }
    if (X.count(acc.ind)) total += 1;
  }
  return total;
}

// Guaranteed floor for N(T; e) at a given length: 2^(len - ceil(k/n)*n + 1)
// - 1 + floor(1/k), clamped at the trivial floor when the exponent is
// negative (counts are nonnegative, and the group case always has the empty
// subsequence).
inline Count main_lower_bound(const CyclicSemigroup& S, std::int64_t length) {
  if (length < 0) throw std::invalid_argument("main_lower_bound: length < 0");
  Count group_floor = S.is_group() ? 1 : 0;
  std::int64_t e = length - S.idempotent_index() + 1;
  if (e < 0) return group_floor;
  return pow2(e) - 1 + group_floor;
}

// Sum of binomial(m, j*n) over j >= h.
inline Count binomial_tail_sum(std::int64_t m, std::int64_t h, std::int64_t n) {
  if (m < 0 || h < 0 || n < 1)
    throw std::invalid_argument("binomial_tail_sum: bad arguments");
  Count total(0);
  for (std::int64_t j = h; j * n <= m; ++j) total += binomial(m, j * n);
  return total;
}

// Number of nonempty position subsets W of a positive-integer sequence with
// sum(W) >= threshold and sum(W) == 0 mod n. States are (residue, exact sum)
// for sums below the threshold and (residue, saturated) at or above it;
// saturation only ever merges sums that already passed the threshold, so the
// congruence-and-threshold predicate stays exact.
inline Count count_threshold_congruence(const IntSequence& T,
                                        std::int64_t threshold,
                                        std::int64_t n) {
  if (threshold < 0 || n < 1)
    throw std::invalid_argument("count_threshold_congruence: bad arguments");
  const std::size_t buckets = static_cast<std::size_t>(threshold) + 1;
  auto run = [&](auto zero) -> Count {
    using C = decltype(zero);
    // dp[r * buckets + s], s == threshold meaning saturated
    std::vector<C> dp(static_cast<std::size_t>(n) * buckets, C(0));
    dp[0] = C(1);  // empty subset: residue 0, sum 0
    for (auto t : T.terms()) {
      std::vector<C> next = dp;
      for (std::int64_t r = 0; r < n; ++r) {
        for (std::int64_t s = 0; s <= threshold; ++s) {
          C& cur = dp[static_cast<std::size_t>(r) * buckets +
                      static_cast<std::size_t>(s)];
          if (cur == C(0)) continue;
          std::int64_t r2 = (r + t) % n;
          std::int64_t s2 = s + t;
          if (s2 > threshold) s2 = threshold;
          next[static_cast<std::size_t>(r2) * buckets +
               static_cast<std::size_t>(s2)] += cur;
        }
      }
      dp = std::move(next);
    }
    Count res(dp[static_cast<std::size_t>(0) * buckets +
                 static_cast<std::size_t>(threshold)]);
    if (threshold == 0) res -= 1;  // drop the empty subset
    return res;
  };
  if (detail::fits_u64(T.size())) return run(std::uint64_t{0});
  return run(Count(0));
}

// Group-case N(T): subsets (empty included) with sum 0 mod n.
inline Count count_zero_sum(const ResidueSequence& T) {
  const std::int64_t n = T.n();
  auto run = [&](auto zero) -> Count {
    using C = decltype(zero);
    std::vector<C> dp(static_cast<std::size_t>(n), C(0));
    dp[0] = C(1);
    for (auto t : T.terms()) {
      std::vector<C> next = dp;
      for (std::int64_t r = 0; r < n; ++r) {
        if (dp[static_cast<std::size_t>(r)] == C(0)) continue;
        next[static_cast<std::size_t>((r + t) % n)] +=
            dp[static_cast<std::size_t>(r)];
      }
      dp = std::move(next);
    }
    return Count(dp[0]);
  };
  if (detail::fits_u64(T.size())) return run(std::uint64_t{0});
  return run(Count(0));
}

}  // namespace zsum
