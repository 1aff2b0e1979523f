#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace hilbertlab {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Accepts "p/q", "p" and finite decimal literals such as "-0.125" or "3e-2"; all parsed exactly.
Rational parse_rational(std::string_view text);

/// Lowest-terms text: "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// Natural logarithm of a positive rational, safe for values far outside double range.
double log_rational(const Rational& value);

/// Exact binary value of a finite double.
Rational from_double(double value);

/// Largest rational of the form k / 2^bits not exceeding value (value >= 0).
Rational rational_floor(double value, unsigned bits = 40);

int sign(const Rational& value);

}  // namespace hilbertlab
