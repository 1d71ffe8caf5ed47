#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatznet {

/// Unbounded non-negative integer. Every operation in this library is exact;
/// values in the reduction and network modules outgrow 64 bits within a
/// dozen rows, so there is no fixed-width fast path.
using Nat = boost::multiprecision::cpp_int;

/// Default step/budget cap shared by trace-producing operations.
/// Overridable per call and, in the CLI, via COLLATZNET_BUDGET.
inline constexpr std::uint64_t kDefaultBudget = 100000;

inline bool is_odd(const Nat& x) { return boost::multiprecision::bit_test(x, 0); }
inline bool is_even(const Nat& x) { return !is_odd(x); }

/// Residue of x modulo a small positive modulus.
inline unsigned mod_small(const Nat& x, unsigned m) {
  return static_cast<unsigned>(x % m);
}

/// 2-adic valuation: the largest e with 2^e dividing x.
inline std::uint64_t nu2(const Nat& x) {
  if (x <= 0) throw std::domain_error("nu2: argument must be >= 1");
  return boost::multiprecision::lsb(x);
}

inline Nat pow2(std::uint64_t e) {
  Nat r = 1;
  return r << e;
}

/// Exact base^e by repeated squaring.
inline Nat pow_nat(Nat base, std::uint64_t e) {
  Nat r = 1;
  while (e != 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline void require_odd(const Nat& a, const char* who) {
  if (a < 1 || !is_odd(a))
    throw std::domain_error(std::string(who) + ": expected an odd number >= 1, got " + a.str());
}

inline void require_positive(const Nat& x, const char* who) {
  if (x < 1) throw std::domain_error(std::string(who) + ": expected a number >= 1, got " + x.str());
}

}  // namespace collatznet
