#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zsum {

// Exact nonnegative counts. Arbitrary precision everywhere; the counting DPs
// switch to a provably overflow-free uint64 path internally when possible.
using Count = boost::multiprecision::cpp_int;

inline Count pow2(std::int64_t e) {
  if (e < 0) throw std::invalid_argument("pow2: negative exponent");
  return Count(1) << static_cast<unsigned>(e);
}

inline Count binomial(std::int64_t m, std::int64_t r) {
  if (r < 0 || m < 0 || r > m) return Count(0);
  if (r > m - r) r = m - r;
  Count acc(1);
  for (std::int64_t i = 1; i <= r; ++i) {
    acc *= (m - r + i);
    acc /= i;
  }
  return acc;
}

inline std::string to_decimal(const Count& c) { return c.str(); }

}  // namespace zsum
