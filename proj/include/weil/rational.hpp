#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace weil {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws Error(InvalidInput) on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// Exact value of a decimal such as "1e-8", "-0.25" or "3.5E2"; also accepts
/// anything parse_rational accepts. Throws Error(InvalidInput).
Rational parse_decimal(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

int sign(const Rational& q);
Rational abs(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Nearest multiple of 2^-bits (ties away from -inf).
Rational round_dyadic(const Rational& q, unsigned long bits);

/// Nearest multiple of 10^-digits.
Rational round_decimal(const Rational& q, unsigned long digits);

/// Smallest dyadic with denominator 2^bits that is >= sqrt(q), q >= 0.
Rational sqrt_upper(const Rational& q, unsigned long bits = 64);

/// Largest dyadic with denominator 2^bits that is <= sqrt(q), q >= 0.
Rational sqrt_lower(const Rational& q, unsigned long bits = 64);

Rational pow(const Rational& q, unsigned long e);

/// 2^k for any integer k.
Rational pow2(long k);

double to_double(const Rational& q);

bool is_zero(const QVector& v);

}  // namespace weil
