#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "zsum/config.hpp"

namespace zsum {

// Element of a finite cyclic semigroup, held by its canonical index.
// The index is the least positive t with t*s == a, so it lies in [1, k+n-1].
struct Element {
  std::int64_t ind = 1;
  friend bool operator==(Element a, Element b) { return a.ind == b.ind; }
  friend bool operator!=(Element a, Element b) { return a.ind != b.ind; }
  friend bool operator<(Element a, Element b) { return a.ind < b.ind; }
};

// Residue class modulo n, value normalized to [0, n).
struct Residue {
  std::int64_t value = 0;
  friend bool operator==(Residue a, Residue b) { return a.value == b.value; }
  friend bool operator!=(Residue a, Residue b) { return a.value != b.value; }
  friend bool operator<(Residue a, Residue b) { return a.value < b.value; }
};

// Finite cyclic semigroup of index k and period n. Elements are s, 2s, ...,
// (k+n-1)s. Sums wrap into the cycle [k, k+n-1]: i+j stays put while it is at
// most k+n-1, otherwise it lands on the unique t in [k, k+n-1] congruent to
// i+j mod n. k == 1 is the cyclic group of order n.
class CyclicSemigroup {
 public:
  CyclicSemigroup(std::int64_t k, std::int64_t n) : k_(k), n_(n) {
    if (k < 1 || n < 1)
      throw std::invalid_argument("CyclicSemigroup: k and n must be positive");
    if (k > caps().max_order || n > caps().max_order ||
        k + n - 1 > caps().max_order)
      throw cap_exceeded("CyclicSemigroup: order " + std::to_string(k + n - 1) +
                         " exceeds cap " + std::to_string(caps().max_order));
  }

  std::int64_t k() const { return k_; }
  std::int64_t n() const { return n_; }
  std::int64_t order() const { return k_ + n_ - 1; }
  bool is_group() const { return k_ == 1; }

  Element element(std::int64_t ind) const {
    if (ind < 1 || ind > order())
      throw std::invalid_argument("element: index " + std::to_string(ind) +
                                  " outside [1, " + std::to_string(order()) +
                                  "]");
    return Element{ind};
  }

  Element add(Element a, Element b) const {
    check(a);
    check(b);
    std::int64_t s = a.ind + b.ind;
    if (s <= order()) return Element{s};
    return Element{k_ + (s - k_) % n_};
  }

  // Index of the unique idempotent: the single multiple of n in [k, k+n-1].
  std::int64_t idempotent_index() const { return ((k_ + n_ - 1) / n_) * n_; }

  Element idempotent() const { return Element{idempotent_index()}; }

  Residue psi(Element a) const {
    check(a);
    return Residue{a.ind % n_};
  }

  friend bool operator==(const CyclicSemigroup& a, const CyclicSemigroup& b) {
    return a.k_ == b.k_ && a.n_ == b.n_;
  }

 private:
  void check(Element a) const {
    if (a.ind < 1 || a.ind > order())
      throw std::invalid_argument("element index out of range");
  }

  std::int64_t k_;
  std::int64_t n_;
};

inline CyclicSemigroup make_semigroup(std::int64_t k, std::int64_t n) {
  return CyclicSemigroup(k, n);
}

}  // namespace zsum
