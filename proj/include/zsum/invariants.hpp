#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zsum/config.hpp"
#include "zsum/count.hpp"
#include "zsum/counting.hpp"
#include "zsum/semigroup.hpp"
#include "zsum/sequence.hpp"
#include "zsum/smoothness.hpp"

namespace zsum {

enum class InvariantMode {
  formula,     // closed form plus a verified extremal witness
  exhaustive,  // additionally recompute by bounded search and cross-check
};

struct InvariantResult {
  std::string name;
  std::int64_t k = 1;
  std::int64_t n = 0;
  Count closed_form = 0;
  std::optional<Count> exhaustive;
  // A longest sequence missing the defining property (as term values), when
  // one exists and validating it fits within the configured caps.
  std::optional<std::vector<std::int64_t>> witness;
};

// Calls fn for every nonempty zero-sum-free sequence over Z/nZ, as a
// non-decreasing vector of residues in [1, n-1], in depth-first extension
// order. Any sequence reaching length n would contradict the pigeonhole on
// its prefix sums, so hitting that depth aborts loudly.
inline void enumerate_zero_sum_free(
    std::int64_t n, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  if (n < 1) throw std::invalid_argument("enumerate_zero_sum_free: need n >= 1");
  if (n > caps().zero_sum_free_max_n)
    throw cap_exceeded("enumerate_zero_sum_free: n exceeds cap");
  if (n == 1) return;
  std::vector<std::int64_t> seq;
  // bit r of mask marks residue r attainable as a nonempty subset sum
  auto extend = [&](auto&& self, std::uint64_t mask, std::int64_t lo) -> void {
    for (std::int64_t v = lo; v < n; ++v) {
      std::uint64_t next = mask | (std::uint64_t{1} << v);
      for (std::int64_t r = 0; r < n; ++r)
        if (mask >> r & 1) next |= std::uint64_t{1} << ((r + v) % n);
      if (next & 1) continue;  // subset summing to 0 appeared
      seq.push_back(v);
      fn(seq);
      if (static_cast<std::int64_t>(seq.size()) >= n)
        throw std::logic_error(
            "enumerate_zero_sum_free: sequence of length n is zero-sum-free");
      self(self, next, v);
      seq.pop_back();
    }
  };
  extend(extend, 0, 1);
}

namespace detail {

inline bool is_zero_sum_free(std::int64_t n, const std::vector<std::int64_t>& terms) {
  std::uint64_t mask = 0;
  for (auto t : terms) {
    std::int64_t v = t % n;
    if (v < 0) v += n;
    std::uint64_t next = mask | (std::uint64_t{1} << v);
    for (std::int64_t r = 0; r < n; ++r)
      if (mask >> r & 1) next |= std::uint64_t{1} << ((r + v) % n);
    if (next & 1) return false;
    mask = next;
  }
  return true;
}

struct BadSequenceScan {
  std::int64_t max_bad_length = 0;
  std::optional<std::vector<std::int64_t>> first_witness;
  std::uint64_t zero_sum_free_count = 0;
};

// Scans all zero-sum-free sequences for ones with no (signed) smooth
// certificate under any unit generator.
inline BadSequenceScan scan_uncertified_zero_sum_free(std::int64_t n, bool with_signs) {
  BadSequenceScan out;
  enumerate_zero_sum_free(n, [&](const std::vector<std::int64_t>& seq) {
    ++out.zero_sum_free_count;
    ResidueSequence R(n, seq);
    bool certified = with_signs ? find_signed_smooth_generator(R).has_value()
                                : find_smooth_generator(R).has_value();
    if (certified) return;
    auto len = static_cast<std::int64_t>(seq.size());
    if (len > out.max_bad_length) {
      out.max_bad_length = len;
      out.first_witness = seq;
    }
  });
  return out;
}

// Closed form ceil((n+1)/2) shared by both smoothness invariants away from
// their small exceptional orders.
inline std::int64_t smooth_invariant_generic(std::int64_t n) { return n / 2 + 1; }

inline std::vector<std::int64_t> smooth_witness_construction(std::int64_t n,
                                                             bool with_signs) {
  std::vector<std::int64_t> w;
  if (n == 4) return {2};
  if (n == 7 && !with_signs) return {2, 6};
  if (n == 9) return {1, 3, 3, 7};
  if (n >= 6 && n % 2 == 0) {
    w.assign(static_cast<std::size_t>(n / 2 - 1), 2);
    w.push_back(3);
    return w;
  }
  if (n >= 11 && n % 2 == 1) {
    w.assign(static_cast<std::size_t>((n - 5) / 2), 2);
    w.push_back(3);
    w.push_back(3);
    return w;
  }
  return w;
}

}  // namespace detail

// Largest order of a sequence over Z/nZ that is zero-sum-free and, for any
// unit generator, fails (signed) smooth certification; plus one. Equals 1
// when every zero-sum-free sequence is certified.
inline InvariantResult smooth_invariant(std::int64_t n, bool with_signs,
                                        InvariantMode mode) {
  if (n < 2) throw std::invalid_argument("smooth_invariant: need n >= 2");
  InvariantResult res;
  res.name = with_signs ? "sgn" : "smo";
  res.k = 1;
  res.n = n;
  std::int64_t value;
  if (with_signs) {
    if (n == 2 || n == 3 || n == 5 || n == 7)
      value = 1;
    else if (n == 4)
      value = 2;
    else
      value = detail::smooth_invariant_generic(n);
  } else {
    if (n == 2 || n == 3 || n == 5)
      value = 1;
    else if (n == 4)
      value = 2;
    else if (n == 7)
      value = 3;
    else
      value = detail::smooth_invariant_generic(n);
  }
  res.closed_form = value;

  std::optional<detail::BadSequenceScan> scan;
  auto ensure_scan = [&]() {
    if (!scan) scan = detail::scan_uncertified_zero_sum_free(n, with_signs);
  };

  if (value > 1) {
    auto cand = detail::smooth_witness_construction(n, with_signs);
    bool ok = static_cast<std::int64_t>(cand.size()) == value - 1 &&
              detail::is_zero_sum_free(n, cand);
    if (ok) {
      ResidueSequence R(n, cand);
      if (static_cast<std::int64_t>(cand.size()) <= caps().sign_search_max_len) {
        ok = with_signs ? !find_signed_smooth_generator(R).has_value()
                        : !find_smooth_generator(R).has_value();
      } else {
        ok = false;  // cannot validate, fall through to search or omit
      }
    }
    if (ok) {
      std::sort(cand.begin(), cand.end());
      res.witness = std::move(cand);
    } else if (n <= caps().zero_sum_free_max_n) {
      ensure_scan();
      if (scan->max_bad_length != value - 1)
        throw std::logic_error("smooth_invariant: closed form contradicted by search");
      res.witness = scan->first_witness;
    }
  }

  if (mode == InvariantMode::exhaustive) {
    ensure_scan();
    Count found = scan->max_bad_length + 1;
    if (found != res.closed_form)
      throw std::logic_error("smooth_invariant: closed form contradicted by search");
    res.exhaustive = found;
  }
  return res;
}

inline InvariantResult sgn_constant(std::int64_t n, InvariantMode mode) {
  return smooth_invariant(n, true, mode);
}

inline InvariantResult smo_constant(std::int64_t n, InvariantMode mode) {
  return smooth_invariant(n, false, mode);
}

// Least d such that every length-d sequence over C_{k;n} has a nonempty
// subsequence summing to the idempotent.
inline InvariantResult erdos_burgess(const CyclicSemigroup& S, InvariantMode mode) {
  InvariantResult res;
  res.name = "erdos_burgess";
  res.k = S.k();
  res.n = S.n();
  const std::int64_t target = S.idempotent_index();
  res.closed_form = target;

  std::vector<std::int64_t> ones(static_cast<std::size_t>(target - 1), 1);
  {
    SemigroupSequence W(S, ones);
    auto sums = subsums(S, W);
    if (sums.count(target))
      throw std::logic_error("erdos_burgess: all-ones witness hits the idempotent");
  }
  res.witness = ones;

  if (mode == InvariantMode::exhaustive) {
    if (S.order() > 62)
      throw cap_exceeded("erdos_burgess: exhaustive search needs order <= 62");
    const std::int64_t order = S.order();
    std::vector<std::vector<std::int64_t>> add(
        static_cast<std::size_t>(order + 1),
        std::vector<std::int64_t>(static_cast<std::size_t>(order + 1), 0));
    for (std::int64_t a = 1; a <= order; ++a)
      for (std::int64_t b = 1; b <= order; ++b)
        add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            S.add(S.element(a), S.element(b)).ind;
    std::int64_t best = 0;
    std::vector<std::int64_t> cur;
    // bit v-1 of mask marks element index v attainable as a nonempty sum
    auto extend = [&](auto&& self, std::uint64_t mask, std::int64_t lo) -> void {
      if (static_cast<std::int64_t>(cur.size()) > best)
        best = static_cast<std::int64_t>(cur.size());
      if (static_cast<std::int64_t>(cur.size()) >= target)
        throw std::logic_error(
            "erdos_burgess: idempotent-sum-free sequence reaches closed form length");
      for (std::int64_t v = lo; v <= order; ++v) {
        std::uint64_t next = mask | (std::uint64_t{1} << (v - 1));
        for (std::int64_t r = 1; r <= order; ++r)
          if (mask >> (r - 1) & 1)
            next |= std::uint64_t{1}
                    << (add[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)] - 1);
        if (next >> (target - 1) & 1) continue;
        cur.push_back(v);
        self(self, next, v);
        cur.pop_back();
      }
    };
    extend(extend, 0, 1);
    Count found = best + 1;
    if (found != res.closed_form)
      throw std::logic_error("erdos_burgess: closed form contradicted by search");
    res.exhaustive = found;
  }
  return res;
}

inline InvariantResult erdos_burgess(std::int64_t k, std::int64_t n,
                                     InvariantMode mode) {
  return erdos_burgess(make_semigroup(k, n), mode);
}

// Least d such that every length-d sequence over Z/nZ has a nonempty
// zero-sum subsequence.
inline InvariantResult davenport(std::int64_t n, InvariantMode mode) {
  if (n < 1) throw std::invalid_argument("davenport: need n >= 1");
  InvariantResult res;
  res.name = "davenport";
  res.k = 1;
  res.n = n;
  res.closed_form = n;
  if (n > 1) {
    std::vector<std::int64_t> ones(static_cast<std::size_t>(n - 1), 1);
    if (!detail::is_zero_sum_free(n, ones))
      throw std::logic_error("davenport: all-ones witness has a zero sum");
    res.witness = ones;
  }
  if (mode == InvariantMode::exhaustive) {
    std::int64_t best = 0;
    if (n > 1) {
      enumerate_zero_sum_free(n, [&](const std::vector<std::int64_t>& seq) {
        best = std::max(best, static_cast<std::int64_t>(seq.size()));
      });
    }
    Count found = best + 1;
    if (found != res.closed_form)
      throw std::logic_error("davenport: closed form contradicted by search");
    res.exhaustive = found;
  }
  return res;
}

// A sequence over C_{k;n} built from a longest uncertified zero-sum-free
// sequence (lifted to matching indices) padded with copies of index n. Its
// idempotent-sum count meets the generic lower bound with room delta equal
// to ceil(n/2) while every signed certificate on its residue image stays
// shorter than floor(n/2).
inline SemigroupSequence example1_instance(const CyclicSemigroup& S,
                                           std::int64_t total_length) {
  const std::int64_t k = S.k();
  const std::int64_t n = S.n();
  if (k > n) throw std::invalid_argument("example1_instance: needs k <= n");
  if (!((n >= 6 && n % 2 == 0) || (n >= 9 && n % 2 == 1)))
    throw std::invalid_argument("example1_instance: needs even n >= 6 or odd n >= 9");
  if (total_length < n / 2)
    throw std::invalid_argument("example1_instance: length below floor(n/2)");
  auto inv = sgn_constant(n, InvariantMode::formula);
  if (!inv.witness || static_cast<std::int64_t>(inv.witness->size()) != n / 2)
    throw std::logic_error("example1_instance: no validated witness available");
  std::vector<std::int64_t> inds;
  inds.reserve(static_cast<std::size_t>(total_length));
  for (auto r : *inv.witness) inds.push_back(r == 0 ? n : r);
  for (std::int64_t i = n / 2; i < total_length; ++i) inds.push_back(n);
  return SemigroupSequence(S, std::move(inds));
}

}  // namespace zsum
