#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zsum/count.hpp"
#include "zsum/semigroup.hpp"

namespace zsum {

// Sequences are unordered multisets. Canonical storage is the sorted
// non-decreasing term vector; two sequences are equal iff their canonical
// vectors are equal. Subsequence counts elsewhere are over positions, not
// over distinct multisets, so a repeated term contributes multiplicity.

namespace detail {

inline std::vector<std::int64_t> parse_terms(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  if (text.back() == ',')
    throw std::invalid_argument("sequence parse: trailing comma");
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      throw std::invalid_argument("sequence parse: empty term in \"" + text +
                                  "\"");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("sequence parse: bad term \"" + item + "\"");
    }
    if (pos != item.size())
      throw std::invalid_argument("sequence parse: bad term \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

inline std::string print_terms(const std::vector<std::int64_t>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(terms[i]);
  }
  return out;
}

}  // namespace detail

// Multiset of positive integers.
class IntSequence {
 public:
  IntSequence() = default;
  explicit IntSequence(std::vector<std::int64_t> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end());
    if (!terms_.empty() && terms_.front() < 1)
      throw std::invalid_argument("IntSequence: terms must be positive");
  }
  static IntSequence parse(const std::string& text) {
    return IntSequence(detail::parse_terms(text));
  }

  const std::vector<std::int64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::string str() const { return detail::print_terms(terms_); }
  friend bool operator==(const IntSequence& a, const IntSequence& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<std::int64_t> terms_;
};

// Multiset of residues modulo n, values normalized to [0, n).
class ResidueSequence {
 public:
  explicit ResidueSequence(std::int64_t n, std::vector<std::int64_t> terms = {})
      : n_(n), terms_(std::move(terms)) {
    if (n < 1) throw std::invalid_argument("ResidueSequence: n must be positive");
    for (auto& t : terms_) {
      t %= n_;
      if (t < 0) t += n_;
    }
    std::sort(terms_.begin(), terms_.end());
  }
  static ResidueSequence parse(std::int64_t n, const std::string& text) {
    return ResidueSequence(n, detail::parse_terms(text));
  }

  std::int64_t n() const { return n_; }
  const std::vector<std::int64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::string str() const { return detail::print_terms(terms_); }
  friend bool operator==(const ResidueSequence& a, const ResidueSequence& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::int64_t n_;
  std::vector<std::int64_t> terms_;
};

// Multiset over a finite cyclic semigroup, terms held by canonical index.
class SemigroupSequence {
 public:
  SemigroupSequence(const CyclicSemigroup& S, std::vector<std::int64_t> inds = {})
      : k_(S.k()), n_(S.n()), inds_(std::move(inds)) {
    for (auto ind : inds_) S.element(ind);
    std::sort(inds_.begin(), inds_.end());
  }
  static SemigroupSequence parse(const CyclicSemigroup& S,
                                 const std::string& text) {
    return SemigroupSequence(S, detail::parse_terms(text));
  }

  std::int64_t k() const { return k_; }
  std::int64_t n() const { return n_; }
  const std::vector<std::int64_t>& inds() const { return inds_; }
  std::size_t size() const { return inds_.size(); }
  bool empty() const { return inds_.empty(); }
  std::string str() const { return detail::print_terms(inds_); }
  friend bool operator==(const SemigroupSequence& a, const SemigroupSequence& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.inds_ == b.inds_;
  }

 private:
  std::int64_t k_;
  std::int64_t n_;
  std::vector<std::int64_t> inds_;
};

// Fold of all terms. The empty sequence has a sum only when an identity
// exists, which for these semigroups means k == 1 (the idempotent).
inline std::optional<Element> sigma(const CyclicSemigroup& S,
                                    const SemigroupSequence& T) {
  if (T.empty()) {
    if (S.is_group()) return S.idempotent();
    return std::nullopt;
  }
  Element acc = S.element(T.inds().front());
  for (std::size_t i = 1; i < T.size(); ++i)
    acc = S.add(acc, S.element(T.inds()[i]));
  return acc;
}

inline Residue sigma(const ResidueSequence& T) {
  std::int64_t acc = 0;
  for (auto t : T.terms()) acc = (acc + t) % T.n();
  return Residue{acc};
}

inline std::int64_t sigma(const IntSequence& T) {
  std::int64_t acc = 0;
  for (auto t : T.terms()) acc += t;
  return acc;
}

// Set of sums of nonempty subsequences, built by incremental closure:
// after each term a the set becomes old | (old + a) | {a}.
inline std::set<std::int64_t> subsums(const CyclicSemigroup& S,
                                      const SemigroupSequence& T) {
  std::vector<char> reach(static_cast<std::size_t>(S.order()) + 1, 0);
  for (auto ind : T.inds()) {
    Element a = S.element(ind);
    std::vector<char> next = reach;
    for (std::int64_t v = 1; v <= S.order(); ++v)
      if (reach[static_cast<std::size_t>(v)])
        next[static_cast<std::size_t>(S.add(Element{v}, a).ind)] = 1;
    next[static_cast<std::size_t>(a.ind)] = 1;
    reach = std::move(next);
  }
  std::set<std::int64_t> out;
  for (std::int64_t v = 1; v <= S.order(); ++v)
    if (reach[static_cast<std::size_t>(v)]) out.insert(v);
  return out;
}

inline std::set<std::int64_t> subsums(const IntSequence& T) {
  std::set<std::int64_t> reach;
  for (auto a : T.terms()) {
    std::set<std::int64_t> next = reach;
    for (auto v : reach) next.insert(v + a);
    next.insert(a);
    reach = std::move(next);
  }
  return reach;
}

inline std::set<std::int64_t> subsums(const ResidueSequence& T) {
  std::set<std::int64_t> reach;
  for (auto a : T.terms()) {
    std::set<std::int64_t> next = reach;
    for (auto v : reach) next.insert((v + a) % T.n());
    next.insert(a % T.n());
    reach = std::move(next);
  }
  return reach;
}

// Term-wise image under psi: indices reduced modulo the period.
inline ResidueSequence lift_psi(const CyclicSemigroup& S,
                                const SemigroupSequence& T) {
  std::vector<std::int64_t> r;
  r.reserve(T.size());
  for (auto ind : T.inds()) r.push_back(S.psi(S.element(ind)).value);
  return ResidueSequence(S.n(), std::move(r));
}

// ---- multiset streams ----
//
// Length-L multisets over {0,...,A-1} as non-decreasing tuples in
// lexicographic order. The stream supports ranking, so a sweep can be split
// into disjoint contiguous chunks that cover it exactly once.

inline Count multiset_count(std::int64_t alphabet, std::int64_t length) {
  if (alphabet < 0 || length < 0)
    throw std::invalid_argument("multiset_count: negative argument");
  if (alphabet == 0) return length == 0 ? Count(1) : Count(0);
  return binomial(alphabet + length - 1, length);
}

// rank-th tuple (0-based) of the stream above. A non-decreasing tuple t maps
// to the strictly increasing combination c_i = t_i + i, ranked in the usual
// combinatorial number system.
inline std::vector<std::int64_t> multiset_unrank(std::int64_t alphabet,
                                                 std::int64_t length,
                                                 Count rank) {
  if (rank < 0 || rank >= multiset_count(alphabet, length))
    throw std::invalid_argument("multiset_unrank: rank out of range");
  std::vector<std::int64_t> t(static_cast<std::size_t>(length));
  std::int64_t m = alphabet + length - 1;  // combination universe size
  std::int64_t c = 0;                      // next candidate combination value
  for (std::int64_t i = 0; i < length; ++i) {
    while (true) {
      Count below = binomial(m - c - 1, length - i - 1);
      if (rank < below) break;
      rank -= below;
      ++c;
    }
    t[static_cast<std::size_t>(i)] = c - i;
    ++c;
  }
  return t;
}

// Advance to the lexicographic successor; false when the stream is finished.
inline bool multiset_next(std::vector<std::int64_t>& t, std::int64_t alphabet) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (t[i] + 1 < alphabet) {
      std::int64_t v = t[i] + 1;
      for (std::size_t j = i; j < t.size(); ++j) t[j] = v;
      return true;
    }
  }
  return false;
}

template <class Fn>
void for_each_multiset(std::int64_t alphabet, std::int64_t length, Fn fn) {
  Count total = multiset_count(alphabet, length);
  if (total == 0) return;
  if (total > Count(caps().max_enumeration))
    throw cap_exceeded("multiset stream of " + total.str() +
                       " tuples exceeds cap");
  if (length == 0) {
    fn(std::vector<std::int64_t>{});
    return;
  }
  std::vector<std::int64_t> t(static_cast<std::size_t>(length), 0);
  do {
    fn(t);
  } while (multiset_next(t, alphabet));
}

}  // namespace zsum
