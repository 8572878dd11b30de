#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace domlab {

// Exact probabilities. cpp_rational keeps St. Petersburg tails (2^-64 and
// below) and repeated merges exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp >= 0)
    r *= Rational(BigInt(1) << exp);
  else
    r /= Rational(BigInt(1) << -exp);
  return r;
}

// Parses "3/4", "0.25", "1", or "1e-3" into an exact rational.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  // Decimal / scientific notation, parsed exactly digit by digit.
  std::string t = s;
  long exp10 = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stol(t.substr(epos + 1));
    t = t.substr(0, epos);
  }
  bool neg = false;
  size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
  BigInt digits = 0;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    if (t[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational: " + s);
      seen_dot = true;
    } else if (t[i] >= '0' && t[i] <= '9') {
      digits = digits * 10 + (t[i] - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad rational: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational: " + s);
  Rational r(digits);
  long net = exp10 - frac_digits;
  BigInt p10 = 1;
  for (long k = 0; k < std::labs(net); ++k) p10 *= 10;
  if (net >= 0)
    r *= Rational(p10);
  else
    r /= Rational(p10);
  return neg ? -r : r;
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r);
}

}  // namespace domlab
