#pragma once

// Small helpers around GMP integers and rationals.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tatekit {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Integer& z);
std::string to_string(const Rational& x);

Integer ipow(std::uint64_t base, std::uint64_t exp);
Rational rpow(const Rational& base, std::int64_t exp);

// Largest k with prime^k | z; z must be nonzero.
std::int64_t valuation(const Integer& z, std::uint64_t prime);
// Removes all factors of prime and returns how many were removed.
std::int64_t strip_prime(Integer& z, std::uint64_t prime);

// Canonical representative of x in [0, modulus); x's denominator must be invertible.
Integer mod_rational(const Rational& x, const Integer& modulus);
std::uint32_t mod_rational_small(const Rational& x, std::uint32_t modulus);

bool is_prime(std::uint64_t n);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

}  // namespace tatekit
