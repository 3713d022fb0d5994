#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace zsum {

// Raised when a request exceeds a resource cap instead of silently degrading.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// All resource limits live in one place. Operations refuse (throw cap_exceeded)
// rather than degrade when a limit is hit.
struct Caps {
  // largest accepted semigroup order k+n-1
  std::int64_t max_order = std::int64_t{1} << 20;
  // largest sequence length for 2^len subset enumeration
  int brute_force_max_len = 24;
  // largest sequence length for the signed certificate search
  int sign_search_max_len = 24;
  // largest multiset stream size a sweep will walk
  std::uint64_t max_enumeration = std::uint64_t{1} << 28;
  // largest modulus for zero-sum-free enumeration and exhaustive invariants
  std::int64_t zero_sum_free_max_n = 14;
};

namespace detail {
inline bool read_env_int(const char* name, std::int64_t& out) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return false;
  char* end = nullptr;
  long long parsed = std::strtoll(v, &end, 10);
  if (end == nullptr || *end != '\0' || parsed <= 0) return false;
  out = static_cast<std::int64_t>(parsed);
  return true;
}
}  // namespace detail

// Process-wide caps. ZSUM_MAX_ORDER and ZSUM_MAX_ENUM environment variables
// override the corresponding defaults once, at first use.
inline Caps& caps() {
  static Caps c = [] {
    Caps init;
    std::int64_t v = 0;
    if (detail::read_env_int("ZSUM_MAX_ORDER", v)) init.max_order = v;
    if (detail::read_env_int("ZSUM_MAX_ENUM", v))
      init.max_enumeration = static_cast<std::uint64_t>(v);
    return init;
  }();
  return c;
}

}  // namespace zsum
