#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "zsum/config.hpp"
#include "zsum/count.hpp"
#include "zsum/counting.hpp"
#include "zsum/invariants.hpp"
#include "zsum/semigroup.hpp"
#include "zsum/sequence.hpp"
#include "zsum/smoothness.hpp"

namespace zsum {

struct VerifyFailure {
  std::string sequence;
  std::string expected;
  std::string actual;
};

// Outcome of one exhaustive sweep. Failure records beyond the storage cap
// are dropped but still counted, so failure_count is always exact. Reports
// are byte-for-byte independent of the job count.
struct VerificationReport {
  static constexpr std::size_t kMaxStoredFailures = 1000;

  std::string suite;
  std::vector<std::pair<std::string, std::string>> grid;
  std::uint64_t instances_checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<VerifyFailure> failures;
  std::vector<std::pair<std::string, std::string>> data;
  double elapsed_ms = 0.0;

  bool pass() const { return failure_count == 0; }
};

namespace detail {

struct ChunkAccum {
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::vector<VerifyFailure> stored;
  std::vector<std::uint64_t> tallies;

  void fail(std::string sequence, std::string expected, std::string actual) {
    ++failures;
    if (stored.size() < VerificationReport::kMaxStoredFailures)
      stored.push_back({std::move(sequence), std::move(expected), std::move(actual)});
  }
};

// Walks every non-decreasing tuple of the given length over the alphabet,
// split into contiguous rank ranges, one worker per range. Merging in range
// order makes the result identical for every job count.
template <class Fn>
inline void sweep_length(std::int64_t alphabet, std::int64_t length, int jobs,
                         std::size_t tally_slots, ChunkAccum& total, Fn&& per_tuple) {
  Count total_count = multiset_count(alphabet, length);
  if (total_count > caps().max_enumeration)
    throw cap_exceeded("verify sweep: enumeration exceeds cap");
  const auto total_u = static_cast<std::uint64_t>(total_count);
  int chunks = jobs < 1 ? 1 : (jobs > 64 ? 64 : jobs);

  std::vector<ChunkAccum> acc(static_cast<std::size_t>(chunks));
  for (auto& a : acc) a.tallies.assign(tally_slots, 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](int c) {
    auto& a = acc[static_cast<std::size_t>(c)];
    try {
      std::uint64_t lo = total_u / static_cast<std::uint64_t>(chunks) *
                             static_cast<std::uint64_t>(c) +
                         std::min<std::uint64_t>(
                             static_cast<std::uint64_t>(c),
                             total_u % static_cast<std::uint64_t>(chunks));
      std::uint64_t span = total_u / static_cast<std::uint64_t>(chunks) +
                           (static_cast<std::uint64_t>(c) <
                                    total_u % static_cast<std::uint64_t>(chunks)
                                ? 1
                                : 0);
      if (span == 0) return;
      auto tuple = multiset_unrank(alphabet, length, Count(lo));
      for (std::uint64_t i = 0; i < span; ++i) {
        ++a.instances;
        per_tuple(tuple, a);
        if (i + 1 < span) multiset_next(tuple, alphabet);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  };

  if (chunks == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; ++c) workers.emplace_back(run_chunk, c);
    for (auto& w : workers) w.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& a : acc) {
    total.instances += a.instances;
    total.failures += a.failures;
    for (auto& f : a.stored) {
      if (total.stored.size() >= VerificationReport::kMaxStoredFailures) break;
      total.stored.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < tally_slots; ++i) total.tallies[i] += a.tallies[i];
  }
}

template <class Fn>
inline void sweep_lengths(std::int64_t alphabet, std::int64_t min_len,
                          std::int64_t max_len, int jobs, std::size_t tally_slots,
                          ChunkAccum& total, Fn&& per_tuple) {
  if (total.tallies.size() < tally_slots) total.tallies.assign(tally_slots, 0);
  for (std::int64_t len = min_len; len <= max_len; ++len)
    sweep_length(alphabet, len, jobs, tally_slots, total, per_tuple);
}

struct SuiteTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double stop() const {
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
  }
};

inline void absorb(VerificationReport& rep, ChunkAccum&& acc) {
  rep.instances_checked += acc.instances;
  rep.failure_count += acc.failures;
  for (auto& f : acc.stored) {
    if (rep.failures.size() >= VerificationReport::kMaxStoredFailures) break;
    rep.failures.push_back(std::move(f));
  }
}

// Idempotent-sum subsequence count via the element-state walk, 64-bit lane.
// Exact for lengths up to 62.
inline std::uint64_t count_idempotent_u64(const CyclicSemigroup& S,
                                          const std::vector<std::int64_t>& inds) {
  auto cnt = element_dp<std::uint64_t>(S, inds);
  std::uint64_t total = cnt[static_cast<std::size_t>(S.idempotent_index())];
  if (S.is_group()) ++total;  // empty subsequence sums to the identity
  return total;
}

inline std::uint64_t count_zero_sum_u64(std::int64_t n,
                                        const std::vector<std::int64_t>& residues) {
  std::vector<std::uint64_t> cnt(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
  cnt[0] = 1;
  for (auto r : residues) {
    std::copy(cnt.begin(), cnt.end(), next.begin());
    for (std::int64_t v = 0; v < n; ++v)
      next[static_cast<std::size_t>((v + r) % n)] += cnt[static_cast<std::size_t>(v)];
    cnt.swap(next);
  }
  return cnt[0];
}

// Runs fn on each sub-multiset of (vals, mult) of size at least min_size,
// passed as a sorted value vector. The empty sub-multiset is included when
// min_size is 0.
template <class Fn>
inline void for_each_submultiset_at_least(const std::vector<std::int64_t>& vals,
                                          const std::vector<std::int64_t>& mult,
                                          std::int64_t min_size, Fn&& fn) {
  std::vector<std::int64_t> pick(vals.size(), 0);
  std::int64_t remaining = 0;
  for (auto m : mult) remaining += m;
  auto rec = [&](auto&& self, std::size_t i, std::int64_t size,
                 std::int64_t left) -> void {
    if (size + left < min_size) return;
    if (i == vals.size()) {
      std::vector<std::int64_t> sub;
      sub.reserve(static_cast<std::size_t>(size));
      for (std::size_t j = 0; j < vals.size(); ++j)
        sub.insert(sub.end(), static_cast<std::size_t>(pick[j]), vals[j]);
      fn(sub);
      return;
    }
    for (std::int64_t c = mult[i]; c >= 0; --c) {
      pick[i] = c;
      self(self, i + 1, size + c, left - mult[i]);
    }
  };
  rec(rec, 0, 0, remaining);
}

inline void compress_multiset(const std::vector<std::int64_t>& sorted,
                              std::vector<std::int64_t>& vals,
                              std::vector<std::int64_t>& mult) {
  vals.clear();
  mult.clear();
  for (auto v : sorted) {
    if (!vals.empty() && vals.back() == v) {
      ++mult.back();
    } else {
      vals.push_back(v);
      mult.push_back(1);
    }
  }
}

inline std::vector<std::int64_t> shifted(const std::vector<std::int64_t>& tuple,
                                         std::int64_t offset) {
  std::vector<std::int64_t> out(tuple);
  for (auto& v : out) v += offset;
  return out;
}

inline void require_dp_length(std::int64_t max_len) {
  if (max_len < 0 || max_len > 62)
    throw cap_exceeded("verify sweep: max length outside the 64-bit count range");
}

}  // namespace detail

// Every sequence's idempotent-sum count meets the generic lower bound.
inline VerificationReport verify_main_bound(std::int64_t k, std::int64_t n,
                                            std::int64_t max_len, int jobs = 1) {
  detail::require_dp_length(max_len);
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "main-bound";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"max_len", std::to_string(max_len)}};
  std::vector<Count> bound(static_cast<std::size_t>(max_len) + 1);
  for (std::int64_t len = 0; len <= max_len; ++len)
    bound[static_cast<std::size_t>(len)] = main_lower_bound(S, len);
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      S.order(), 0, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        auto inds = detail::shifted(tuple, 1);
        std::uint64_t cnt = detail::count_idempotent_u64(S, inds);
        const Count& b = bound[tuple.size()];
        if (Count(cnt) < b)
          a.fail(detail::print_terms(inds), "count >= " + to_decimal(b),
                 std::to_string(cnt));
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// For k > n: any sequence whose count is delta short of doubling has all its
// long index sub-multisets covering an initial segment.
inline VerificationReport verify_main_structure_i(std::int64_t k, std::int64_t n,
                                                  std::int64_t delta,
                                                  std::int64_t max_len,
                                                  int jobs = 1) {
  if (k <= n)
    throw std::invalid_argument("verify_main_structure_i: needs k > n");
  if (delta < 1)
    throw std::invalid_argument("verify_main_structure_i: needs delta >= 1");
  detail::require_dp_length(max_len);
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "structure-i";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"delta", std::to_string(delta)},
              {"max_len", std::to_string(max_len)}};
  const std::int64_t idem = S.idempotent_index();
  const std::int64_t min_sub = n + delta - 1;
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      S.order(), 0, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        const auto len = static_cast<std::int64_t>(tuple.size());
        std::int64_t expo = len - idem + 1 + delta;
        if (expo < 1) return;
        auto inds = detail::shifted(tuple, 1);
        std::uint64_t cnt = detail::count_idempotent_u64(S, inds);
        if (Count(cnt) >= pow2(expo) - 1) return;
        std::vector<std::int64_t> vals, mult;
        detail::compress_multiset(inds, vals, mult);
        detail::for_each_submultiset_at_least(
            vals, mult, min_sub, [&](const std::vector<std::int64_t>& sub) {
              if (!detail::covers_initial_segment(sub))
                a.fail(detail::print_terms(inds),
                       "sub-multiset " + detail::print_terms(sub) +
                           " covers an initial segment",
                       "it does not");
            });
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// For k <= n: any sequence whose count is delta short of doubling keeps a
// signed certified subsequence of length at least n - delta in its residue
// image. delta ceil(n/2) is only allowed when probing for the expected
// breakdown at that margin.
inline VerificationReport verify_main_structure_ii(std::int64_t k, std::int64_t n,
                                                   std::int64_t delta,
                                                   std::int64_t max_len, int jobs = 1,
                                                   bool allow_sharpness_delta = false) {
  if (k > n)
    throw std::invalid_argument("verify_main_structure_ii: needs k <= n");
  const std::int64_t delta_cap = (n + 1) / 2 - (allow_sharpness_delta ? 0 : 1);
  if (delta < 1 || delta > delta_cap)
    throw std::invalid_argument("verify_main_structure_ii: delta out of range");
  detail::require_dp_length(max_len);
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "structure-ii";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"delta", std::to_string(delta)},
              {"max_len", std::to_string(max_len)}};
  const std::int64_t group_floor = k == 1 ? 1 : 0;
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      S.order(), 0, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        const auto len = static_cast<std::int64_t>(tuple.size());
        std::int64_t expo = len - n + 1 + delta;
        if (expo < 1) return;
        auto inds = detail::shifted(tuple, 1);
        std::uint64_t cnt = detail::count_idempotent_u64(S, inds);
        if (Count(cnt) >= pow2(expo) - 1 + group_floor) return;
        std::vector<std::int64_t> residues;
        residues.reserve(inds.size());
        for (auto v : inds) residues.push_back(v % n);
        std::int64_t got =
            max_signed_smooth_sub_length(ResidueSequence(n, residues));
        if (got < n - delta)
          a.fail(detail::print_terms(inds),
                 "signed certified subsequence of length >= " +
                     std::to_string(n - delta),
                 "longest is " + std::to_string(got));
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

namespace detail {

inline bool prop_structure_delta_feasible(std::int64_t idem, std::int64_t n,
                                          std::int64_t delta) {
  // delta <= ceil(idem/2) - 3n/2, kept in integers as 2*delta + 3n <= 2*ceil
  return 2 * delta + 3 * n <= 2 * ((idem + 1) / 2);
}

inline std::int64_t excess_over_ones(const std::vector<std::int64_t>& inds) {
  std::int64_t ex = 0;
  for (auto v : inds)
    if (v > 1) ex += v - 1;
  return ex;
}

}  // namespace detail

// For k > n and small delta: a short count forces the index multiset to be
// all ones except for entries whose total excess stays below delta.
inline VerificationReport verify_prop_structure(std::int64_t k, std::int64_t n,
                                                std::int64_t delta,
                                                std::int64_t max_len, int jobs = 1) {
  if (k <= n)
    throw std::invalid_argument("verify_prop_structure: needs k > n");
  if (delta < 1)
    throw std::invalid_argument("verify_prop_structure: needs delta >= 1");
  detail::require_dp_length(max_len);
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "prop-structure";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"delta", std::to_string(delta)},
              {"max_len", std::to_string(max_len)}};
  const std::int64_t idem = S.idempotent_index();
  if (!detail::prop_structure_delta_feasible(idem, n, delta)) {
    rep.data.push_back({"delta_range", "empty"});
    rep.elapsed_ms = timer.stop();
    return rep;
  }
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      S.order(), 0, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        const auto len = static_cast<std::int64_t>(tuple.size());
        std::int64_t expo = len - idem + 1 + delta;
        if (expo < 1) return;
        auto inds = detail::shifted(tuple, 1);
        std::uint64_t cnt = detail::count_idempotent_u64(S, inds);
        if (Count(cnt) >= pow2(expo) - 1) return;
        std::int64_t excess = detail::excess_over_ones(inds);
        if (excess > delta - 1)
          a.fail(detail::print_terms(inds),
                 "total excess over ones <= " + std::to_string(delta - 1),
                 std::to_string(excess));
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// Diagnostic sweep over a delta range: tallies qualifying and violating
// sequences per delta without asserting anything.
inline VerificationReport verify_prop_structure_sweep(std::int64_t k, std::int64_t n,
                                                      std::int64_t delta_lo,
                                                      std::int64_t delta_hi,
                                                      std::int64_t max_len,
                                                      int jobs = 1) {
  if (k <= n)
    throw std::invalid_argument("verify_prop_structure_sweep: needs k > n");
  if (delta_lo < 1 || delta_hi < delta_lo)
    throw std::invalid_argument("verify_prop_structure_sweep: bad delta range");
  detail::require_dp_length(max_len);
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "prop-structure";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"delta_lo", std::to_string(delta_lo)},
              {"delta_hi", std::to_string(delta_hi)},
              {"max_len", std::to_string(max_len)}};
  const std::int64_t idem = S.idempotent_index();
  for (std::int64_t delta = delta_lo; delta <= delta_hi; ++delta) {
    detail::ChunkAccum acc;
    detail::sweep_lengths(
        S.order(), 0, max_len, jobs, 2, acc,
        [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
          const auto len = static_cast<std::int64_t>(tuple.size());
          std::int64_t expo = len - idem + 1 + delta;
          if (expo < 1) return;
          auto inds = detail::shifted(tuple, 1);
          std::uint64_t cnt = detail::count_idempotent_u64(S, inds);
          if (Count(cnt) >= pow2(expo) - 1) return;
          ++a.tallies[0];
          if (detail::excess_over_ones(inds) > delta - 1) ++a.tallies[1];
        });
    rep.instances_checked += acc.instances;
    std::string key = "delta=" + std::to_string(delta);
    rep.data.push_back(
        {key, "feasible=" +
                  std::string(detail::prop_structure_delta_feasible(idem, n, delta)
                                  ? "yes"
                                  : "no") +
                  " qualifying=" + std::to_string(acc.tallies[0]) +
                  " violating=" + std::to_string(acc.tallies[1])});
  }
  rep.elapsed_ms = timer.stop();
  return rep;
}

// Every length-n residue sequence avoiding zero with two distinct values has
// at least n zero-sum subsequences.
inline VerificationReport verify_theorem_a(std::int64_t n, int jobs = 1) {
  if (n < 2) throw std::invalid_argument("verify_theorem_a: needs n >= 2");
  detail::require_dp_length(n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "theorem-a";
  rep.grid = {{"n", std::to_string(n)}};
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      n - 1, n, n, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        if (tuple.front() == tuple.back()) return;  // constant sequences exempt
        auto residues = detail::shifted(tuple, 1);
        std::uint64_t cnt = detail::count_zero_sum_u64(n, residues);
        if (cnt < static_cast<std::uint64_t>(n))
          a.fail(detail::print_terms(residues),
                 "zero-sum count >= " + std::to_string(n), std::to_string(cnt));
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// Every residue sequence with a short zero-sum count admits the weighted
// decomposition, revalidated clause by clause.
inline VerificationReport verify_theorem_b(std::int64_t n, std::int64_t delta,
                                           std::int64_t max_len, int jobs = 1) {
  if (n < 2) throw std::invalid_argument("verify_theorem_b: needs n >= 2");
  if (delta < 1 || delta > n / 4 + 1)
    throw std::invalid_argument("verify_theorem_b: delta outside [1, n/4+1]");
  detail::require_dp_length(max_len);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "theorem-b";
  rep.grid = {{"n", std::to_string(n)},
              {"delta", std::to_string(delta)},
              {"max_len", std::to_string(max_len)}};
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      n, 0, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        const auto len = static_cast<std::int64_t>(tuple.size());
        std::int64_t expo = len - n + 1 + delta;
        if (expo < 1) return;
        std::uint64_t cnt = detail::count_zero_sum_u64(n, tuple);
        if (Count(cnt) >= pow2(expo)) return;
        ResidueSequence R(n, tuple);
        auto d = theorem_b_decompose(R, delta);
        if (!d) {
          a.fail(detail::print_terms(tuple), "a weighted decomposition exists",
                 "search found none");
          return;
        }
        if (!check_theorem_b_clauses(R, delta, *d))
          a.fail(detail::print_terms(tuple),
                 "decomposition passes clause revalidation", "it does not");
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// For k > n, inside the critical length window: a sequence has no
// idempotent-sum subsequence exactly when its index multiset covers an
// initial segment and sums below the idempotent index.
inline VerificationReport verify_theorem_c(std::int64_t k, std::int64_t n,
                                           int jobs = 1) {
  if (k <= n)
    throw std::invalid_argument("verify_theorem_c: needs k > n");
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  const std::int64_t idem = S.idempotent_index();
  const std::int64_t lo = (idem / n + 1) * n / 2;
  const std::int64_t hi = idem - 1;
  detail::require_dp_length(hi);
  rep.suite = "theorem-c";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"window", std::to_string(lo) + ".." + std::to_string(hi)}};
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      S.order(), lo, hi, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        auto inds = detail::shifted(tuple, 1);
        bool free = detail::count_idempotent_u64(S, inds) == 0;
        std::int64_t total = 0;
        for (auto v : inds) total += v;
        bool shape = total <= idem - 1 && detail::covers_initial_segment(inds);
        if (free != shape)
          a.fail(detail::print_terms(inds),
                 std::string("idempotent-sum-free == covering-with-small-sum; ") +
                     (shape ? "shape holds" : "shape fails"),
                 free ? "sequence is free" : "sequence is not free");
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// Calls fn with each multiset obtained by choosing r positions of T and a
// sign for each chosen term, as residues mod n. Subsets run in lexicographic
// position order, sign patterns in increasing mask order.
template <class Fn>
inline void enumerate_signed_windows(const ResidueSequence& T, std::int64_t r,
                                     Fn&& fn) {
  const std::int64_t n = T.n();
  const auto len = static_cast<std::int64_t>(T.size());
  if (r < 0 || r > len)
    throw std::invalid_argument("enumerate_signed_windows: bad window size");
  if (r > 62) throw cap_exceeded("enumerate_signed_windows: window too wide");
  std::vector<std::int64_t> idx(static_cast<std::size_t>(r));
  for (std::int64_t i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<std::int64_t> window(static_cast<std::size_t>(r));
  const auto& terms = T.terms();
  while (true) {
    const std::uint64_t sign_count = std::uint64_t{1} << r;
    for (std::uint64_t mask = 0; mask < sign_count; ++mask) {
      for (std::int64_t i = 0; i < r; ++i) {
        auto t = terms[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        window[static_cast<std::size_t>(i)] =
            (mask >> i & 1) ? (n - t) % n : t;
      }
      fn(window);
    }
    // advance the combination
    std::int64_t i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == len - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < r; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// The minimum zero-sum count over signed windows at least doubles with each
// extra window slot, once it exceeds one.
inline VerificationReport verify_doubling(std::int64_t n, std::int64_t max_len,
                                          int jobs = 1) {
  if (n < 2) throw std::invalid_argument("verify_doubling: needs n >= 2");
  detail::require_dp_length(max_len);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "doubling";
  rep.grid = {{"n", std::to_string(n)},
              {"max_len", std::to_string(max_len)}};
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      n, 2, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        const auto len = static_cast<std::int64_t>(tuple.size());
        ResidueSequence R(n, tuple);
        std::vector<std::uint64_t> min_count(static_cast<std::size_t>(len) + 1, 0);
        for (std::int64_t r = 1; r <= len; ++r) {
          std::uint64_t best = ~std::uint64_t{0};
          enumerate_signed_windows(R, r, [&](const std::vector<std::int64_t>& w) {
            std::uint64_t cnt = detail::count_zero_sum_u64(n, w);
            if (cnt < best) best = cnt;
          });
          min_count[static_cast<std::size_t>(r)] = best;
        }
        for (std::int64_t r = 1; r < len; ++r) {
          auto cur = min_count[static_cast<std::size_t>(r)];
          auto next = min_count[static_cast<std::size_t>(r) + 1];
          if (cur > 1 && next < 2 * cur)
            a.fail(detail::print_terms(tuple),
                   "window minimum doubles from size " + std::to_string(r) + " (" +
                       std::to_string(cur) + ")",
                   "size " + std::to_string(r + 1) + " minimum is " +
                       std::to_string(next));
        }
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// Every long integer sequence failing the covering shape has a nonempty
// subset with sum divisible by n, at least twice its own size, and at least
// twice the length overshoot.
inline VerificationReport verify_instant_lemma(std::int64_t n, std::int64_t max_len,
                                               std::int64_t max_term, int jobs = 1) {
  if (n < 1) throw std::invalid_argument("verify_instant_lemma: needs n >= 1");
  if (max_term < 1)
    throw std::invalid_argument("verify_instant_lemma: needs max_term >= 1");
  if (max_len > 20)
    throw cap_exceeded("verify_instant_lemma: max length above subset-scan cap");
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "instant";
  rep.grid = {{"n", std::to_string(n)},
              {"max_len", std::to_string(max_len)},
              {"max_term", std::to_string(max_term)}};
  detail::ChunkAccum acc;
  detail::sweep_lengths(
      max_term, n, max_len, jobs, 0, acc,
      [&](const std::vector<std::int64_t>& tuple, detail::ChunkAccum& a) {
        auto terms = detail::shifted(tuple, 1);
        if (detail::covers_initial_segment(terms)) return;
        const auto len = static_cast<std::int64_t>(terms.size());
        const std::int64_t need = 2 * (len - n + 1);
        bool found = false;
        auto dfs = [&](auto&& self, std::size_t i, std::int64_t size,
                       std::int64_t sum) -> void {
          if (found) return;
          if (size > 0 && sum % n == 0 && sum >= 2 * size && sum >= need) {
            found = true;
            return;
          }
          if (i == terms.size()) return;
          self(self, i + 1, size + 1, sum + terms[i]);
          self(self, i + 1, size, sum);
        };
        dfs(dfs, 0, 0, 0);
        if (!found)
          a.fail(detail::print_terms(terms),
                 "a nonempty subset with sum divisible by " + std::to_string(n) +
                     ", sum >= twice its size, sum >= " + std::to_string(need),
                 "none exists");
      });
  detail::absorb(rep, std::move(acc));
  rep.elapsed_ms = timer.stop();
  return rep;
}

// The padded instance meets its exact count formula, sits below the doubling
// threshold at margin ceil(n/2), yet has no signed certified subsequence of
// length floor(n/2): the margin bound is sharp.
inline VerificationReport verify_example_sharpness(std::int64_t k, std::int64_t n,
                                                   std::int64_t total_length) {
  auto S = make_semigroup(k, n);
  detail::SuiteTimer timer;
  VerificationReport rep;
  rep.suite = "example-sharpness";
  rep.grid = {{"k", std::to_string(k)},
              {"n", std::to_string(n)},
              {"len", std::to_string(total_length)}};
  auto T = example1_instance(S, total_length);
  rep.instances_checked = 1;
  const std::int64_t group_floor = k == 1 ? 1 : 0;
  const std::int64_t delta = (n + 1) / 2;

  Count cnt = count_idempotent_sum(S, T);
  Count expected = pow2(total_length - n / 2) - 1 + group_floor;
  if (cnt != expected) {
    ++rep.failure_count;
    rep.failures.push_back({T.str(), "count == " + to_decimal(expected),
                            to_decimal(cnt)});
  }
  Count threshold = pow2(total_length - n + 1 + delta) - 1 + group_floor;
  if (cnt >= threshold) {
    ++rep.failure_count;
    rep.failures.push_back(
        {T.str(), "count below threshold " + to_decimal(threshold), to_decimal(cnt)});
  }
  auto psi = lift_psi(S, T);
  std::int64_t got = max_signed_smooth_sub_length(psi);
  if (got >= n - delta) {
    ++rep.failure_count;
    rep.failures.push_back(
        {T.str(),
         "no signed certified subsequence of length " + std::to_string(n - delta),
         "longest is " + std::to_string(got)});
  }
  rep.data.push_back({"count", to_decimal(cnt)});
  rep.data.push_back({"max_signed_sub_length", std::to_string(got)});
  rep.elapsed_ms = timer.stop();
  return rep;
}

}  // namespace zsum
