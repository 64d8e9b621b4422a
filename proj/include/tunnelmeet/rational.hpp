#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace tunnelmeet {

/// Arbitrary-precision integer used for enumeration indices and codes.
using Natural = boost::multiprecision::mpz_int;

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

/// Formats as "num/den" (denominator always printed, "3/1" for integers).
std::string to_string(const Rational& q);

/// Accepts "num/den", "num", with an optional leading '-'. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Decimal approximation for human-facing output only.
double to_double(const Rational& q);

/// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

std::size_t hash_value(const Rational& q);

}  // namespace tunnelmeet
