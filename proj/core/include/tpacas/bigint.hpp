#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tpacas {

using BigInt = mpz_class;
using Rational = mpq_class;

std::string to_decimal(const BigInt& value);

/// Parses an optionally signed base-10 integer. Throws ParseError.
BigInt from_decimal(std::string_view text);

/// Canonical residue in [0, modulus).
BigInt mod(const BigInt& value, const BigInt& modulus);

/// Modular inverse; throws DomainError when none exists.
BigInt mod_inverse(const BigInt& value, const BigInt& modulus);

/// floor(sqrt(n)) for n >= 0.
BigInt isqrt(const BigInt& n);

/// ceil(sqrt(n)) for n >= 0.
BigInt isqrt_ceil(const BigInt& n);

std::size_t bit_length(const BigInt& value);

}  // namespace tpacas
