#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tropkit {

// Exact scalar used everywhere. Always canonical (gmp keeps it reduced).
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "+p" and "p/q" with q != 0; the result is reduced.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise, with q > 0.
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

// num/den reduced; den must be nonzero.
Rational ratio(long num, long den);

Rational min_of(const std::vector<Rational>& values);
Rational max_of(const std::vector<Rational>& values);

Integer lcm_of_denominators(const std::vector<Rational>& values);

double to_double(const Rational& value);

} // namespace tropkit
