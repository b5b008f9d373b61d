#pragma once

#include <optional>

#include "tpacas/group.hpp"
#include "tpacas/simnet.hpp"

namespace tpacas::ppc {

struct ReconstructedOperands {
  std::optional<BigInt> x;
  std::optional<BigInt> y;
};

/// Everything a coalition can derive about both operands of one comparison
/// from its merged view. Works by closing the known field labels under the
/// linear relations of the protocol, plus a search over [0, search_bound)
/// wherever a commitment, its help value and the other share are known.
/// `knowledge` must cover a single run.
ReconstructedOperands reconstruct_operands(const net::Knowledge& knowledge,
                                           const GroupParams& params,
                                           const BigInt& key_a, const BigInt& key_b,
                                           const BigInt& search_bound);

}  // namespace tpacas::ppc
