#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace darboux {

using Integer = mpz_class;
using Rational = mpq_class;

/// Renders `r` as "a" or "a/b" in lowest terms.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Correctly rounded (nearest-even) conversion to binary64.
double to_double(const Rational& r);

/// Lowest-terms numerator (signed) and denominator (positive).
Integer numerator_of(const Rational& r);
Integer denominator_of(const Rational& r);

}  // namespace darboux
