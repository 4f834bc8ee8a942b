#pragma once

#include <cstdint>
#include <numeric>

#include "gm/errors.hpp"

namespace gm {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r{};
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r{};
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r{};
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

// Non-negative gcd; gcd(0, 0) == 0.
inline Int gcd(Int a, Int b) {
  if (a == INT64_MIN || b == INT64_MIN) throw OverflowError("gcd of INT64_MIN");
  return std::gcd(a, b);
}

// Floor modulus with result in [0, m) for m > 0.
inline Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int floor_div(Int a, Int m) { return (a - floor_mod(a, m)) / m; }

}  // namespace gm
