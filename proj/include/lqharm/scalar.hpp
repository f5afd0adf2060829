#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace lqharm {

using Rational = mpq_class;

enum class ScalarMode { rational, float64 };

std::string_view to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

/// Parses "p/q" or "p" (optionally signed) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "3/1", "-1/4".
std::string format_rational(const Rational& value);

/// Nearest double, ties to even. mpq get_d truncates toward zero instead.
double rational_to_double(const Rational& value);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarMode mode = ScalarMode::float64;
  static constexpr bool exact = false;
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarMode mode = ScalarMode::rational;
  static constexpr bool exact = true;
  static double to_double(const Rational& v) { return rational_to_double(v); }
  // Every finite double is a dyadic rational, so this is exact.
  static Rational from_double(double v) { return Rational(v); }
  static Rational from_int(std::int64_t v) { return Rational(static_cast<long>(v)); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <class T>
T abs_value(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(v);
  } else {
    return T(abs(v));
  }
}

template <class T>
int sign_of(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return (v > 0.0) - (v < 0.0);
  } else {
    return sgn(v);
  }
}

/// x^n for an integer exponent, exact for rationals. 0^0 = 1.
Rational int_power(const Rational& base, long exponent);

/// True when q is an integer small enough for exact powering.
bool is_small_integer(double q);

template <class T>
struct PowerValue {
  T value;
  bool exact;
};

/// |x|^q with 0^0 = 1. Rationals stay exact for integer q; anything else is
/// evaluated in double precision and flagged inexact. Requires x != 0 when q < 0.
template <class T>
PowerValue<T> abs_power(const T& x, double q) {
  if constexpr (std::is_same_v<T, double>) {
    const double a = std::abs(x);
    if (q == 0.0) return {1.0, false};
    if (q == 1.0) return {a, false};
    if (q == 2.0) return {a * a, false};
    return {std::pow(a, q), false};
  } else {
    const Rational a = abs(x);
    if (is_small_integer(q)) return {int_power(a, static_cast<long>(q)), true};
    return {Rational(std::pow(rational_to_double(a), q)), false};
  }
}

}  // namespace lqharm
