#pragma once

// Scalar regimes. Exact computations run over arbitrary-precision rationals,
// numeric ones over double-precision complex numbers. Code is written against
// FieldTraits so that each algorithm is instantiated once per regime; mixing
// regimes requires an explicit conversion.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace webendo {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class F>
concept Field = std::same_as<F, Rational> || std::same_as<F, Complex>;

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* regime = "exact";

  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static Rational from_int(long v) { return Rational(v); }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* regime = "floating";

  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
};

template <Field F>
inline constexpr bool is_exact_v = FieldTraits<F>::exact;

template <Field F>
double magnitude(const F& x) {
  return FieldTraits<F>::magnitude(x);
}

template <Field F>
bool is_zero(const F& x, double tol) {
  return FieldTraits<F>::is_zero(x, tol);
}

template <Field F>
Complex to_complex(const F& x) {
  return FieldTraits<F>::to_complex(x);
}

Rational make_rational(long num, long den = 1);

// Parses "p", "p/q" or a decimal literal such as "-0.25" into a canonical rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

// Best rational approximation of x with denominator <= max_den (continued
// fractions). Returns nullopt when no convergent is within tol of x.
std::optional<Rational> rationalize(double x, long max_den, double tol);

bool is_finite(const Complex& z);

}  // namespace webendo
