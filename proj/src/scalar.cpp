#include "lqharm/scalar.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lqharm/errors.hpp"

namespace lqharm {

std::string_view to_string(ScalarMode mode) {
  return mode == ScalarMode::rational ? "rational" : "float64";
}

ScalarMode parse_scalar_mode(std::string_view text) {
  if (text == "rational") return ScalarMode::rational;
  if (text == "float64" || text == "float") return ScalarMode::float64;
  throw InputError("unknown scalar mode '" + std::string(text) + "'");
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InputError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  r.get_num() = mpz_class(num, 10);
  r.get_den() = mpz_class(den, 10);
  if (r.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rational_to_double(const Rational& value) {
  const double d = value.get_d();
  if (!std::isfinite(d) || Rational(d) == value) return d;
  const double away = std::nextafter(d, sgn(value) > 0 ? std::numeric_limits<double>::infinity()
                                                        : -std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return d;
  const Rational below = abs(Rational(value - d)), above = abs(Rational(Rational(away) - value));
  if (above < below) return away;
  if (below < above) return d;
  return (std::bit_cast<std::uint64_t>(d) & 1u) == 0 ? d : away;
}

Rational int_power(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  Rational result;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), e);
  if (exponent < 0) {
    if (result.get_num() == 0) throw InputError("zero raised to a negative power");
    result = 1 / result;
  }
  result.canonicalize();
  return result;
}

bool is_small_integer(double q) {
  return std::isfinite(q) && std::floor(q) == q && std::abs(q) <= 4096.0;
}

}  // namespace lqharm
