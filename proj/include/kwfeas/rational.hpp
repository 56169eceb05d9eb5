#pragma once

// Exact rationals and conversions between rationals, decimal text and doubles.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kwfeas {

using Rational = mpq_class;
using Integer = mpz_class;

// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

// Accepts "7", "-2/3", "0.25", "1e-3", "-1.5E+2". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Nearest double (round to nearest is not guaranteed; error below one ulp).
double to_double(const Rational& q);

// Enclosing doubles: lower_bound(q) <= q <= upper_bound(q).
double lower_bound(const Rational& q);
double upper_bound(const Rational& q);

// Best rational approximation of x with denominator at most max_den
// (continued fractions). x must be finite.
Rational rationalize(double x, const Integer& max_den);

}  // namespace kwfeas
