#include "gm/rational.hpp"

#include <cctype>

namespace gm {

Rational::Rational(Int numerator, Int denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  BigInt n(numerator);
  BigInt d(denominator);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  value_ = boost::multiprecision::cpp_rational(n, d);
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  if (denominator < 0)
    value_ = boost::multiprecision::cpp_rational(BigInt(-numerator), BigInt(-denominator));
  else
    value_ = boost::multiprecision::cpp_rational(numerator, denominator);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error("rational division by zero");
  return Rational(a.value_ / b.value_);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto to_big = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return Rational::BigInt(s);
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (slash != std::string::npos && (den[0] == '-' || den[0] == '+')))
    throw Error("malformed rational '" + text + "'");
  return Rational(to_big(num), to_big(den));
}

}  // namespace gm
