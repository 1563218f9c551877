#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace supermap {

/// Exact rational numbers. Expression templates are disabled so that `auto`
/// always binds to a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(num) / Rational(den);
}

inline std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}

inline std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

/// Parses a numerator/denominator pair given as decimal strings.
Rational parse_rational(const std::string& num, const std::string& den);

Rational factorial(unsigned k);

/// Nearest rational with denominator 2^bits; used to project floating data
/// onto exact models.
Rational rational_from_double(double x, int bits = 40);

double to_double(const Rational& r);

/// Coefficient-ring hooks used by the templated algebra (Grassmann elements,
/// polynomials, jets). Specialized for Rational, double and Polynomial.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_int(std::int64_t v) { return Rational(v); }
};

template <>
struct CoeffTraits<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static double from_rational(const Rational& r) { return to_double(r); }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
};

}  // namespace supermap
