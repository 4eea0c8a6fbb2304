#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace buildwalk {

/// Exact rational scalar. All "rational mode" computations use this type.
using Rational = mpq_class;
using Complex = std::complex<double>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

/// Shortest round-trip free decimal with the given number of significant
/// digits, independent of the global locale.
std::string format_decimal(double x, int significant = 15);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& x) { return x; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational conj(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_negative(const Rational& x) { return sgn(x) < 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& x) { return x.get_d(); }
  static double to_double(double x) { return x; }
  static double conj(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_negative(double x) { return x < 0.0; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_rational(const Rational& x) { return {x.get_d(), 0.0}; }
  static double to_double(const Complex& x) { return x.real(); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static bool is_negative(const Complex& x) { return x.imag() == 0.0 && x.real() < 0.0; }
};

}  // namespace buildwalk
