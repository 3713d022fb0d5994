#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zsum/config.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// A smoothness certificate. For an unsigned certificate the signs vector is
// empty. For a signed certificate signs[i] is +1 or -1 and lines up with the
// canonical (sorted) term order of the certified sequence; the multiset of
// (signs[i] * term_i) * g^-1 mod n equals the coefficient multiset.
struct SmoothCertificate {
  std::int64_t generator = 1;
  std::vector<std::int64_t> coefficients;  // sorted non-decreasing
  std::vector<int> signs;                  // empty, or one of {+1,-1} per term
};

namespace detail {

// Core shape test on a sorted positive multiset: least entry 1 and every
// entry at most one more than the sum of the entries before it. A multiset
// passing this covers [1, total] with its subset sums.
inline bool covers_initial_segment(const std::vector<std::int64_t>& sorted) {
  if (sorted.empty() || sorted.front() != 1) return false;
  std::int64_t reach = 0;
  for (auto v : sorted) {
    if (v > reach + 1) return false;
    reach += v;
  }
  return true;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = a % n;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: not a unit");
  return t < 0 ? t + n : t;
}

inline std::vector<std::int64_t> units_ascending(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t g = 1; g < n; ++g)
    if (std::gcd(g, n) == 1) out.push_back(g);
  return out;
}

}  // namespace detail

// Certificate that the subset sums of T are exactly [1, sigma(T)].
inline std::optional<SmoothCertificate> is_one_smooth(const IntSequence& T) {
  if (T.empty()) return std::nullopt;
  if (!detail::covers_initial_segment(T.terms())) return std::nullopt;
  SmoothCertificate cert;
  cert.generator = 1;
  cert.coefficients = T.terms();
  return cert;
}

// Certificate that T lists multiples of g whose coefficient multiset starts
// at 1, stays within the reach-plus-one chain, and sums below n. Requires g
// to be a unit mod n. Any term divisible by n is never certified.
inline std::optional<SmoothCertificate> is_g_smooth(const ResidueSequence& T,
                                                    std::int64_t g) {
  const std::int64_t n = T.n();
  if (g < 1 || g >= n || std::gcd(g, n) != 1)
    throw std::invalid_argument("is_g_smooth: generator must be a unit");
  if (T.empty()) return std::nullopt;
  const std::int64_t gi = detail::mod_inverse(g, n);
  std::vector<std::int64_t> coeff;
  coeff.reserve(T.size());
  std::int64_t total = 0;
  for (auto t : T.terms()) {
    std::int64_t c = t % n * gi % n;
    if (c == 0) return std::nullopt;
    coeff.push_back(c);
    total += c;
  }
  if (total >= n) return std::nullopt;
  std::sort(coeff.begin(), coeff.end());
  if (!detail::covers_initial_segment(coeff)) return std::nullopt;
  SmoothCertificate cert;
  cert.generator = g;
  cert.coefficients = std::move(coeff);
  return cert;
}

// First unit g, in increasing order, certifying T.
inline std::optional<SmoothCertificate> find_smooth_generator(
    const ResidueSequence& T) {
  if (T.empty()) return std::nullopt;
  for (auto g : detail::units_ascending(T.n()))
    if (auto cert = is_g_smooth(T, g)) return cert;
  return std::nullopt;
}

namespace detail {

// Searches sign choices for one generator. Each term contributes coefficient
// c or n-c; the chosen multiset must sum below n and cover [1, sum]. The
// search walks terms in decreasing order of their cheaper option, pruning
// branches whose remaining cheapest total already reaches n.
inline std::optional<std::vector<int>> signed_choice_search(
    const std::vector<std::int64_t>& base_coeff, std::int64_t n) {
  const std::size_t len = base_coeff.size();
  std::vector<std::size_t> order(len);
  for (std::size_t i = 0; i < len; ++i) order[i] = i;
  auto cheap = [&](std::size_t i) {
    return std::min(base_coeff[i], n - base_coeff[i]);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cheap(a) > cheap(b); });
  std::vector<std::int64_t> cheap_suffix(len + 1, 0);
  for (std::size_t i = len; i-- > 0;)
    cheap_suffix[i] = cheap_suffix[i + 1] + cheap(order[i]);

  std::vector<std::int64_t> chosen(len, 0);
  std::vector<int> signs(len, +1);
  std::optional<std::vector<int>> found;

  auto dfs = [&](auto&& self, std::size_t depth, std::int64_t sum) -> bool {
    if (sum + cheap_suffix[depth] >= n) return false;
    if (depth == len) {
      std::vector<std::int64_t> sorted(chosen);
      std::sort(sorted.begin(), sorted.end());
      if (!covers_initial_segment(sorted)) return false;
      found = signs;
      return true;
    }
    std::size_t pos = order[depth];
    std::int64_t c = base_coeff[pos];
    std::int64_t options[2] = {c, n - c};
    int opt_signs[2] = {+1, -1};
    int tries = options[0] == options[1] ? 1 : 2;
    if (tries == 2 && options[1] < options[0]) {
      std::swap(options[0], options[1]);
      std::swap(opt_signs[0], opt_signs[1]);
    }
    for (int i = 0; i < tries; ++i) {
      chosen[pos] = options[i];
      signs[pos] = opt_signs[i];
      if (self(self, depth + 1, sum + options[i])) return true;
    }
    return false;
  };
  dfs(dfs, 0, 0);
  return found;
}

}  // namespace detail

// Certificate for a specific unit g where each term may enter with either
// sign.
inline std::optional<SmoothCertificate> is_signed_g_smooth(
    const ResidueSequence& T, std::int64_t g) {
  const std::int64_t n = T.n();
  if (g < 1 || g >= n || std::gcd(g, n) != 1)
    throw std::invalid_argument("is_signed_g_smooth: generator must be a unit");
  if (T.empty()) return std::nullopt;
  if (T.size() > static_cast<std::size_t>(caps().sign_search_max_len))
    throw cap_exceeded("is_signed_g_smooth: length exceeds sign search cap");
  const std::int64_t gi = detail::mod_inverse(g, n);
  std::vector<std::int64_t> base;
  base.reserve(T.size());
  for (auto t : T.terms()) {
    std::int64_t c = t % n * gi % n;
    if (c == 0) return std::nullopt;  // a zero term never fits under any sign
    base.push_back(c);
  }
  auto signs = detail::signed_choice_search(base, n);
  if (!signs) return std::nullopt;
  SmoothCertificate cert;
  cert.generator = g;
  cert.signs = *signs;
  cert.coefficients.reserve(T.size());
  for (std::size_t i = 0; i < T.size(); ++i)
    cert.coefficients.push_back((*signs)[i] == +1 ? base[i] : T.n() - base[i]);
  std::sort(cert.coefficients.begin(), cert.coefficients.end());
  return cert;
}

// First unit g, in increasing order, with a signed certificate for T.
inline std::optional<SmoothCertificate> find_signed_smooth_generator(
    const ResidueSequence& T) {
  if (T.empty()) return std::nullopt;
  for (auto t : T.terms())
    if (t % T.n() == 0) return std::nullopt;
  for (auto g : detail::units_ascending(T.n()))
    if (auto cert = is_signed_g_smooth(T, g)) return cert;
  return std::nullopt;
}

// Largest size of a subsequence of T carrying a signed certificate for some
// unit, or 0 when none does (the empty subsequence is never certified).
// Signed certification depends only on the chosen multiset, so distinct
// sub-multisets stand in for position subsets.
inline std::int64_t max_signed_smooth_sub_length(const ResidueSequence& T) {
  if (T.size() > static_cast<std::size_t>(caps().sign_search_max_len))
    throw cap_exceeded("max_signed_smooth_sub_length: length exceeds cap");
  // terms divisible by n can never appear in a certified subsequence
  std::vector<std::int64_t> vals;
  std::vector<std::int64_t> mult;
  for (auto t : T.terms()) {
    if (t % T.n() == 0) continue;
    if (!vals.empty() && vals.back() == t) {
      ++mult.back();
    } else {
      vals.push_back(t);
      mult.push_back(1);
    }
  }
  std::int64_t best = 0;
  std::vector<std::int64_t> pick(vals.size(), 0);
  auto scan = [&](auto&& self, std::size_t i, std::int64_t size) -> void {
    if (i == vals.size()) {
      if (size == 0 || size <= best) return;
      std::vector<std::int64_t> sub;
      sub.reserve(static_cast<std::size_t>(size));
      for (std::size_t j = 0; j < vals.size(); ++j)
        sub.insert(sub.end(), static_cast<std::size_t>(pick[j]), vals[j]);
      if (find_signed_smooth_generator(ResidueSequence(T.n(), std::move(sub))))
        best = size;
      return;
    }
    for (std::int64_t c = mult[i]; c >= 0; --c) {
      pick[i] = c;
      self(self, i + 1, size + c);
    }
  };
  scan(scan, 0, 0);
  return best;
}

// Reordering of T as u copies of g, v copies of -g, entries x_i*g with small
// total absolute weight, and a remainder y_j*g, with all weights taken from
// the symmetric residue window (-n/2, n/2].
struct TheoremBDecomposition {
  std::int64_t generator = 1;
  std::int64_t u = 0;
  std::int64_t v = 0;
  std::vector<std::int64_t> xs;  // delta-1 nonzero weights
  std::vector<std::int64_t> ys;  // remaining weights
};

namespace detail {

inline std::int64_t symmetric_rep(std::int64_t value, std::int64_t n) {
  std::int64_t m = value % n;
  if (m < 0) m += n;
  return 2 * m > n ? m - n : m;
}

}  // namespace detail

// Searches units in increasing order, then the split with the smallest
// feasible u, choosing the delta-1 nonzero weights of least absolute value.
inline std::optional<TheoremBDecomposition> theorem_b_decompose(
    const ResidueSequence& T, std::int64_t delta) {
  const std::int64_t n = T.n();
  if (n < 2) throw std::invalid_argument("theorem_b_decompose: need n >= 2");
  if (delta < 1 || delta > n / 4 + 1)
    throw std::invalid_argument("theorem_b_decompose: delta outside [1, n/4+1]");
  const std::int64_t len = static_cast<std::int64_t>(T.size());
  const std::int64_t q = n - 2 * delta + 1;
  const std::int64_t w = len - n + delta;
  if (w < 0) return std::nullopt;
  for (auto g : detail::units_ascending(n)) {
    const std::int64_t gi = detail::mod_inverse(g, n);
    std::vector<std::int64_t> z;
    z.reserve(T.size());
    std::int64_t plus = 0, minus = 0;
    for (auto t : T.terms()) {
      std::int64_t r = detail::symmetric_rep(t % n * gi % n, n);
      z.push_back(r);
      if (r == 1) ++plus;
      if (r == -1) ++minus;
    }
    for (std::int64_t u = (q + 1) / 2; u <= q; ++u) {
      const std::int64_t v = q - u;
      if (u > plus || v > minus) continue;
      std::vector<std::int64_t> rest;
      rest.reserve(z.size());
      std::int64_t drop_plus = u, drop_minus = v;
      for (auto r : z) {
        if (r == 1 && drop_plus > 0) {
          --drop_plus;
        } else if (r == -1 && drop_minus > 0) {
          --drop_minus;
        } else {
          rest.push_back(r);
        }
      }
      std::vector<std::int64_t> nonzero_idx;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (rest[i] != 0) nonzero_idx.push_back(static_cast<std::int64_t>(i));
      if (static_cast<std::int64_t>(nonzero_idx.size()) < delta - 1) continue;
      std::sort(nonzero_idx.begin(), nonzero_idx.end(),
                [&](std::int64_t a, std::int64_t b) {
                  auto va = rest[static_cast<std::size_t>(a)];
                  auto vb = rest[static_cast<std::size_t>(b)];
                  auto aa = va < 0 ? -va : va;
                  auto ab = vb < 0 ? -vb : vb;
                  if (aa != ab) return aa < ab;
                  return va < vb;
                });
      std::int64_t abs_sum = 0;
      std::vector<char> is_x(rest.size(), 0);
      for (std::int64_t i = 0; i < delta - 1; ++i) {
        auto idx = static_cast<std::size_t>(nonzero_idx[static_cast<std::size_t>(i)]);
        auto vv = rest[idx];
        abs_sum += vv < 0 ? -vv : vv;
        is_x[idx] = 1;
      }
      if (abs_sum > 2 * delta - 2) continue;
      TheoremBDecomposition d;
      d.generator = g;
      d.u = u;
      d.v = v;
      for (std::size_t i = 0; i < rest.size(); ++i)
        (is_x[i] ? d.xs : d.ys).push_back(rest[i]);
      std::sort(d.xs.begin(), d.xs.end());
      std::sort(d.ys.begin(), d.ys.end());
      return d;
    }
  }
  return std::nullopt;
}

// Mechanical re-validation of a decomposition against the sequence, with no
// reliance on how it was found.
inline bool check_theorem_b_clauses(const ResidueSequence& T, std::int64_t delta,
                                    const TheoremBDecomposition& d) {
  const std::int64_t n = T.n();
  const std::int64_t len = static_cast<std::int64_t>(T.size());
  if (d.generator < 1 || d.generator >= n || std::gcd(d.generator, n) != 1)
    return false;
  if (!(d.u >= d.v && d.v >= 0)) return false;
  if (d.u + d.v != n - 2 * delta + 1) return false;
  if (static_cast<std::int64_t>(d.xs.size()) != delta - 1) return false;
  if (static_cast<std::int64_t>(d.ys.size()) != len - n + delta) return false;
  auto in_window = [&](std::int64_t x) { return 2 * x > -n && 2 * x <= n; };
  std::int64_t abs_sum = 0;
  for (auto x : d.xs) {
    if (x == 0 || !in_window(x)) return false;
    abs_sum += x < 0 ? -x : x;
  }
  if (abs_sum > 2 * delta - 2) return false;
  for (auto y : d.ys)
    if (!in_window(y)) return false;
  std::vector<std::int64_t> rebuilt;
  rebuilt.reserve(T.size());
  auto push_mult = [&](std::int64_t coeff) {
    std::int64_t r = coeff % n * d.generator % n;
    r %= n;
    if (r < 0) r += n;
    rebuilt.push_back(r);
  };
  for (std::int64_t i = 0; i < d.u; ++i) push_mult(1);
  for (std::int64_t i = 0; i < d.v; ++i) push_mult(-1);
  for (auto x : d.xs) push_mult(x);
  for (auto y : d.ys) push_mult(y);
  std::sort(rebuilt.begin(), rebuilt.end());
  return rebuilt == T.terms();
}

}  // namespace zsum
