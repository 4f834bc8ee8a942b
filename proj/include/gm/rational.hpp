#pragma once

#include <compare>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gm/integer.hpp"

namespace gm {

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator. Printed as "p/q", or "p" when q == 1.
class Rational {
 public:
  using BigInt = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(Int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Int numerator, Int denominator);
  Rational(const BigInt& numerator, const BigInt& denominator);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  Rational abs() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-value_); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_{0};
};

// Parses "p", "-p" or "p/q". Throws gm::Error on malformed text or q == 0.
Rational parse_rational(const std::string& text);

}  // namespace gm
