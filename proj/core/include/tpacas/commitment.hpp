#pragma once

#include <compare>

#include "tpacas/bigint.hpp"
#include "tpacas/group.hpp"
#include "tpacas/random.hpp"

namespace tpacas {

/// Additive split x = (u + v) mod q.
struct RandRep {
  BigInt u;
  BigInt v;

  BigInt value(const BigInt& q) const { return mod(u + v, q); }
};

/// The public half of a Pedersen commitment, c = g^x h^r mod p.
struct Commitment {
  BigInt value;

  friend bool operator==(const Commitment&, const Commitment&) = default;
};

/// The private half, held only by the committer (and whoever it opens to).
struct Opening {
  BigInt message;
  BigInt help;
};

/// E(R(x)): commitments to both shares of a random representation.
struct CommittedPair {
  Commitment first;
  Commitment second;

  friend bool operator==(const CommittedPair&, const CommittedPair&) = default;
};

/// Everything the owner of a committed random representation keeps.
struct SharedSecret {
  BigInt value;
  RandRep shares;
  BigInt help_u;
  BigInt help_v;
  CommittedPair committed;
};

/// Draws u uniformly and sets v = (x - u) mod q. Throws DomainError unless
/// 0 <= x < q.
RandRep rand_rep(const BigInt& x, const GroupParams& params, RandomSource& rng);

/// g^x h^r mod p, with x and r reduced mod q.
Commitment commit(const BigInt& x, const BigInt& r, const BigInt& key,
                  const GroupParams& params);

/// c1 * c2 mod p. Under a common key this commits to the summed openings.
Commitment combine(const Commitment& c1, const Commitment& c2,
                   const GroupParams& params);

bool verify_opening(const Commitment& c, const BigInt& x, const BigInt& r,
                    const BigInt& key, const GroupParams& params);

/// Splits x, then commits to each share under fresh help values. Draw order
/// is u, help for u, help for v.
SharedSecret commit_shared(const BigInt& x, const BigInt& key,
                           const GroupParams& params, RandomSource& rng);

}  // namespace tpacas
