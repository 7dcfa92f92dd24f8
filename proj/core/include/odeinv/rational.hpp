#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace odeinv {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// "p" or "p/q", lowest terms.
std::string to_string(const Rational &q);

// Accepts integers, "p/q" and plain decimals such as "-0.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational &q);

Rational factorial(int n);

// q^n for any integer n; throws std::domain_error on 0^negative.
Rational power(const Rational &q, int n);

} // namespace odeinv
