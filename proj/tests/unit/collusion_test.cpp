#include <gtest/gtest.h>

#include "ppc_fixture.hpp"
#include "tpacas/collusion.hpp"

using namespace tpacas;
using namespace tpacas::ppc;

namespace {

struct Outcome {
  ReconstructedOperands rec;
  BigInt x, y;
};

Outcome attack(std::uint64_t seed, const std::vector<PartyRole>& coalition, bool with_proof) {
  const GroupParams g = toy_group();
  PpcBench b(g, seed);
  const BigInt x = b.rng.below(12), y = b.rng.below(12);
  PpcTranscript t = b.protocol.run(x, y);
  if (with_proof) b.protocol.prove(t);
  std::set<std::string> names;
  for (PartyRole r : coalition) names.insert(b.protocol.endpoint(r));
  const net::Knowledge k = net::audit_views(t.log, names);
  const BigInt bound = g.q / (2 * g.d_max * g.d_max) + 1;
  return {reconstruct_operands(k, g, t.key_a, t.key_b, bound), x, y};
}

}  // namespace

TEST(Collusion, OwnerSideNotariesRecoverTheirOperand) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Outcome a = attack(seed, {PartyRole::kNotaryA1, PartyRole::kNotaryA2}, false);
    ASSERT_TRUE(a.rec.x.has_value());
    EXPECT_EQ(*a.rec.x, a.x);
    const Outcome b = attack(seed, {PartyRole::kNotaryB1, PartyRole::kNotaryB2}, false);
    ASSERT_TRUE(b.rec.y.has_value());
    EXPECT_EQ(*b.rec.y, b.y);
  }
}

TEST(Collusion, CrossCoalitionWithCoordinatorRecoversBoth) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Outcome o = attack(
        seed, {PartyRole::kNotaryA1, PartyRole::kNotaryB1, PartyRole::kCoordinator}, true);
    ASSERT_TRUE(o.rec.x.has_value()) << seed;
    ASSERT_TRUE(o.rec.y.has_value()) << seed;
    EXPECT_EQ(*o.rec.x, o.x);
    EXPECT_EQ(*o.rec.y, o.y);
  }
}

TEST(Collusion, LoneObserversRecoverNothing) {
  for (PartyRole r : {PartyRole::kNotaryA1, PartyRole::kNotaryA2, PartyRole::kNotaryB1,
                      PartyRole::kNotaryB2, PartyRole::kCoordinator}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Outcome o = attack(seed, {r}, true);
      EXPECT_FALSE(o.rec.x.has_value()) << role_name(r);
      EXPECT_FALSE(o.rec.y.has_value()) << role_name(r);
    }
  }
}

TEST(Collusion, EmptyViewRecoversNothing) {
  const GroupParams g = toy_group();
  const auto rec = reconstruct_operands(net::Knowledge{}, g, 9, 27, 12);
  EXPECT_FALSE(rec.x.has_value());
  EXPECT_FALSE(rec.y.has_value());
}
