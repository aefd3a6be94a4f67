#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace gnch {

/// Exact field element. gmpxx keeps arithmetic results canonical (lowest
/// terms, positive denominator); parse_rational canonicalizes parsed input.
using Rational = mpq_class;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static double to_double(const Rational& v);
  static Rational abs(const Rational& v) { return ::abs(v); }
};

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

/// Parses "p/q", an integer, or a decimal literal ("0.125", "-1.5e-3") into
/// an exact rational. Decimal input is read as the decimal value, not the
/// nearest binary double.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms. mpq_class(num, den) leaves the pair as given.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Nearest double to v. mpq_class::get_d truncates, which turns 9/10 into
/// 0.8999999999999999.
double to_double(const Rational& v);

/// Exact value of a finite double.
Rational rational_from_double(double v);

/// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& v);

/// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

/// Integer power, negative exponents allowed for nonzero base.
template <class T>
T int_pow(const T& base, long exponent) {
  if (exponent < 0) {
    return T(1) / int_pow(base, -exponent);
  }
  T result(1);
  T b(base);
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

}  // namespace gnch
