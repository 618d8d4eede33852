#pragma once

#include <gmpxx.h>

#include <string>

namespace chanmom {

// Exact rational carrier; mpq_class keeps values canonical (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Rational rational_pow(const Rational& base, int exponent);
Rational inverse_power(long base, int exponent);  // base^{-exponent}
std::string to_string(const Rational& q);          // "p/q", or "p" when integral
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

Integer binomial(long n, long k);
Integer factorial(long n);

}  // namespace chanmom
