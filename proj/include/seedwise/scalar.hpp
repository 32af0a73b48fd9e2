#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace seedwise {

//! Exact rational scalar. Expression templates are off so `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

//! Scalar-dependent helpers. Every numeric routine in the library is a
//! template over Scalar and is instantiated for Rational and double.
template <typename Scalar> struct ScalarTraits;

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr double equality_tolerance = 0.0;
  static Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }
  static double to_double(const Rational &x) { return x.convert_to<double>(); }
  static bool equal(const Rational &a, const Rational &b) { return a == b; }
  static bool is_zero(const Rational &a) { return a == 0; }
};

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double equality_tolerance = 1e-12;
  static double ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }
  static bool equal(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= equality_tolerance * scale;
  }
  static bool is_zero(double a) { return std::fabs(a) <= equality_tolerance; }
};

template <typename Scalar> Scalar ratio(std::int64_t num, std::int64_t den = 1) {
  return ScalarTraits<Scalar>::ratio(num, den);
}

template <typename Scalar> Scalar half() { return ratio<Scalar>(1, 2); }

template <typename Scalar> double to_double(const Scalar &x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <typename Scalar> bool scalar_equal(const Scalar &a, const Scalar &b) {
  return ScalarTraits<Scalar>::equal(a, b);
}

//! Parses "3/4", "7", "0.85", "-1.5e-2" into an exact rational. Decimals are
//! expanded literally (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

//! "p/q" with q > 0 always present ("1/1" for one).
std::string to_fraction_string(const Rational &x);

//! Decimal rendering with the given number of significant digits.
std::string to_decimal_string(double x, int significant_digits = 15);

} // namespace seedwise
