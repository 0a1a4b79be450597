#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

// Exact arithmetic used wherever a claim is an identity rather than an
// approximation. Coefficients never pass through floating point.

namespace distil {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  Rational acc = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) out *= acc;
    e >>= 1u;
    if (e > 0) acc *= acc;
  }
  return out;
}

// Accepts "p/q" or a plain integer, with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
  const auto bad = [&] { return std::invalid_argument("not a rational 'p/q': '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  const std::size_t slash = text.find('/');
  const auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw bad();
    std::size_t start = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (start == part.size()) throw bad();
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
    return BigInt(std::string(part));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

// "p/q", or just "p" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace distil
