#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsp {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Parses "p/q", "-p/q", plain integers and finite decimals. Decimals are
/// converted exactly, so "0.3" is 3/10. Throws InputError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

RationalVector to_rational(std::span<const Integer> v);

/// Scales a rational vector by the lcm of its denominators and divides by
/// the gcd of the resulting integers. The zero vector maps to itself.
IntegerVector primitive_integer(std::span<const Rational> v);
IntegerVector primitive_integer(std::span<const Integer> v);

}  // namespace rsp
