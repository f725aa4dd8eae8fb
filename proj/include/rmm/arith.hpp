#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace rmm {

using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation. std::nullopt stands for v_p(0) = +infinity.
std::optional<unsigned long> valuation(const Integer& n, unsigned long p);
std::optional<unsigned long> valuation(const Integer& n, const Integer& p);

// v_p(n) >= k, with v_p(0) = +infinity.
bool valuation_at_least(const Integer& n, unsigned long p, unsigned long k);

// Least nonnegative residue of n mod m (m > 0).
unsigned long residue(const Integer& n, unsigned long m);

std::optional<Integer> exact_quotient(const Integer& n, const Integer& d);

Integer power(const Integer& base, unsigned long exponent);

// gcd with the convention gcd(0, x) = |x|.
Integer gcd_of(const Integer& a, const Integer& b);

// Decimal integer with optional sign; throws Error(InvalidArgument) otherwise.
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace rmm
