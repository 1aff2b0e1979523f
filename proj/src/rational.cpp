#include "hilbertlab/rational.hpp"

#include "hilbertlab/error.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace hilbertlab {
namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_text(s)) fail(ErrorKind::InvalidInput, "not an integer: '" + std::string(s) + "'");
  bool negative = s[0] == '-';
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  // A leading zero would make the Integer constructor read octal.
  s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
  Integer value(std::string{s});
  return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    auto exp_text = s.substr(e + 1);
    if (!is_integer_text(exp_text) || exp_text.size() > 6) {
      fail(ErrorKind::InvalidInput, "bad exponent in '" + std::string(s) + "'");
    }
    exponent = std::stol(std::string(exp_text));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      fail(ErrorKind::InvalidInput, "not a number: '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) fail(ErrorKind::InvalidInput, "not a number: '" + std::string(s) + "'");
  // A leading zero would make the Integer constructor read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value{Integer(digits)};
  long shift = exponent - frac_digits;
  Integer ten_power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(shift)));
  value = shift >= 0 ? value * Rational(ten_power) : value / Rational(ten_power);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (is_integer_text(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

std::string format_rational(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

double log_rational(const Rational& value) {
  if (value <= 0) fail(ErrorKind::OutOfRange, "logarithm of a non-positive rational");
  auto log_of = [](const Integer& n) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, n.backend().data());
    return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
  };
  return log_of(boost::multiprecision::numerator(value)) -
         log_of(boost::multiprecision::denominator(value));
}

Rational from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::InvalidInput, "non-finite value");
  return Rational(value);
}

Rational rational_floor(double value, unsigned bits) {
  if (!(value >= 0) || !std::isfinite(value)) fail(ErrorKind::OutOfRange, "rational_floor expects a finite non-negative value");
  double scaled = std::floor(std::ldexp(value, static_cast<int>(bits)));
  Integer den = Integer(1) << bits;
  return Rational(boost::multiprecision::numerator(from_double(scaled)), den);
}

int sign(const Rational& value) { return value.sign(); }

}  // namespace hilbertlab
