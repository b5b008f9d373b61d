#pragma once

#include <string>
#include <string_view>

#include "tpacas/bigint.hpp"
#include "tpacas/random.hpp"

namespace tpacas {

/// Public parameters of a Schnorr group: the order-q subgroup G_q of Z*_p
/// generated by g, plus the bound on the private blinding multipliers.
struct GroupParams {
  BigInt p;
  BigInt q;
  BigInt g;
  BigInt d_max;

  /// d_max squared; the largest possible product of two multipliers.
  BigInt multiplier_product_bound() const { return d_max * d_max; }

  /// True iff 0 <= x and x < q / (2 * d_max^2).
  bool operand_in_bound(const BigInt& x) const;

  /// Canonical text record: "p=<dec>;q=<dec>;g=<dec>;d_max=<dec>".
  std::string to_record() const;
  static GroupParams from_record(std::string_view record);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

struct KeyPair {
  BigInt secret;
  BigInt public_key;
};

inline constexpr int kPrimalityRounds = 40;

/// Throws InvalidGroup naming the first violated invariant.
void validate_group(const GroupParams& params);

/// Non-throwing form of validate_group.
bool is_valid_group(const GroupParams& params) noexcept;

/// Builds a safe-prime group p = 2q + 1 with q of exactly `q_bits` bits.
/// Throws DomainError for q_bits < 16 and InvalidGroup when d_max^2 >= q.
GroupParams generate_group(unsigned q_bits, const BigInt& d_max,
                           RandomSource& rng);

/// p = 1187, q = 593, g = 3, d_max = 5.
GroupParams toy_group();

/// The 1024-bit Oakley group 2 safe prime (RFC 2409) with g = 4.
GroupParams modp1024_group(const BigInt& d_max);

/// base^exponent mod p. Negative exponents invert the base first.
/// Throws DomainError when the base has no inverse.
BigInt mod_exp(const BigInt& base, const BigInt& exponent,
               const GroupParams& params);

KeyPair generate_keypair(const GroupParams& params, RandomSource& rng);

/// Throws DomainError unless 1 <= secret < q.
KeyPair keypair_from_secret(const BigInt& secret, const GroupParams& params);

/// True iff `element` lies in G_q \ {1}.
bool is_group_key(const BigInt& element, const GroupParams& params);

}  // namespace tpacas
