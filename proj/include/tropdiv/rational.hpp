#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tropdiv {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", "-p/q". Result is canonical.
Rational parse_rational(std::string_view text);

// Lowest terms; integers print without a denominator.
std::string to_string(const Rational& x);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);

bool is_integer(const Rational& x);

// Throws ConsistencyError if the value does not fit.
std::int64_t to_int64(const Integer& x);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace tropdiv
