// Exact rationals for threshold tests against integer counts.
#ifndef MANTEL_SRC_EXACT_HPP
#define MANTEL_SRC_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mantel::detail {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The shortest decimal that reads back as x, as an exact rational.
inline Rational exact_decimal(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite constant");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  const std::string s(buf, res.ptr);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  const int exponent = std::stoi(s.substr(e + 1));
  int frac_digits = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    frac_digits = static_cast<int>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  Rational r{BigInt(mantissa)};
  const int shift = exponent - frac_digits;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(shift)));
  if (shift >= 0) return r * scale;
  return r / scale;
}

/// Smallest c >= 0 with (d < r  <=>  d < c) for every integer d >= 0.
inline std::size_t strict_cutoff(const Rational& r) {
  if (r <= 0) return 0;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt c = (num + den - 1) / den;
  return c.convert_to<std::size_t>();
}

/// Smallest integer c with c >= r.
inline BigInt ceil_of(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q;
}

inline Rational exact(std::size_t k) { return Rational(BigInt(k)); }

}  // namespace mantel::detail

#endif  // MANTEL_SRC_EXACT_HPP
