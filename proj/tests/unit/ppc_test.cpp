#include <gtest/gtest.h>

#include <sstream>

#include "ppc_fixture.hpp"
#include "support.hpp"
#include "tpacas/errors.hpp"

using namespace tpacas;
using namespace tpacas::ppc;

namespace {

std::set<std::string> labels_received_by(const PpcTranscript& t, const std::string& who) {
  return net::audit_views(t.log, {who}).labels();
}

}  // namespace

TEST(Decide, Examples) {
  const GroupParams g = toy_group();
  EXPECT_EQ(decide(300, 299, g), ComparisonOutcome::kGreater);
  EXPECT_EQ(decide(0, 0, g), ComparisonOutcome::kEqual);
  EXPECT_EQ(decide(296, 0, g), ComparisonOutcome::kGreater);  // (q-1)/2
  EXPECT_EQ(decide(297, 0, g), ComparisonOutcome::kLess);
  EXPECT_EQ(decide(592, 0, g), ComparisonOutcome::kLess);
}

TEST(Decide, OutcomeNamesRoundTrip) {
  for (auto o : {ComparisonOutcome::kGreater, ComparisonOutcome::kLess, ComparisonOutcome::kEqual}) {
    EXPECT_EQ(outcome_from_string(to_string(o)), o);
  }
  EXPECT_THROW(outcome_from_string("bigger"), ParseError);
}

TEST(Ppc, WorkedExampleSums) {
  WorkedBench b;
  const PpcTranscript t = b.run();
  EXPECT_EQ(t.x_sum, 300);
  EXPECT_EQ(t.y_sum, 299);
  EXPECT_EQ(t.outcome, ComparisonOutcome::kGreater);
  EXPECT_EQ(t.comparison_messages, kPpcMessageCount);
  EXPECT_EQ(b.rng.remaining(), 0u);
  // D * (u1 - u2) = 6 * 50 and D * (v1 - v2) = 6 * (250 - 299) mod 593
  EXPECT_EQ(t.x_sum, (6 * (350 - 300)) % 593);
  EXPECT_EQ(t.y_sum, ((6 * (250 - 299)) % 593 + 593) % 593);
}

TEST(Ppc, WorkedExampleProof) {
  WorkedBench b;
  PpcTranscript t = b.run();
  const ZkpRecord& z = b.protocol.prove(t);
  EXPECT_EQ(z.scaled_help_a_u, 66);
  EXPECT_EQ(z.scaled_help_a_v, 24);
  EXPECT_EQ(z.scaled_help_b_u, 72);
  EXPECT_EQ(z.scaled_help_b_v, 90);
  EXPECT_EQ(z.h1, 90);
  EXPECT_EQ(z.h2, 431);
  EXPECT_EQ(z.c, 899);
  EXPECT_EQ(t.zkp_messages, kZkpMessageCount);
  // 3^(300+299) * 9^90 * 27^431 mod 1187, computed without the library.
  const std::uint64_t rhs =
      naive_pow(3, 599 % 593, 1187) * naive_pow(9, 90, 1187) % 1187 * naive_pow(27, 431, 1187) % 1187;
  EXPECT_EQ(rhs, 899u);
  EXPECT_TRUE(zkp_verify(z, t.x_sum, t.y_sum, 9, 27, b.example.params));
}

TEST(Ppc, VerifierOnHandValues) {
  ZkpRecord r;
  r.scaled_help_a_u = 66;
  r.scaled_help_a_v = 24;
  r.scaled_help_b_u = 72;
  r.scaled_help_b_v = 90;
  r.h1 = 90;
  r.h2 = 431;
  // lifts E(.)^6 of the four hand-example commitments
  const std::uint64_t c1 = naive_pow(3, 350, 1187) * naive_pow(9, 11, 1187) % 1187;
  const std::uint64_t c2 = naive_pow(3, 250, 1187) * naive_pow(9, 4, 1187) % 1187;
  const std::uint64_t c3 = naive_pow(3, 300, 1187) * naive_pow(27, 12, 1187) % 1187;
  const std::uint64_t c4 = naive_pow(3, 299, 1187) * naive_pow(27, 15, 1187) % 1187;
  r.lifted_a_u = naive_pow(c1, 6, 1187);
  r.lifted_a_v = naive_pow(c2, 6, 1187);
  r.lifted_b_u = naive_pow(c3, 6, 1187);
  r.lifted_b_v = naive_pow(c4, 6, 1187);
  r.c = 899;
  const GroupParams g = toy_group();
  EXPECT_TRUE(zkp_verify(r, 300, 299, 9, 27, g));
  EXPECT_FALSE(zkp_verify(r, 301, 299, 9, 27, g));
  ZkpRecord bad = r;
  bad.h1 = 91;
  EXPECT_FALSE(zkp_verify(bad, 300, 299, 9, 27, g));
  bad = r;
  bad.c = 900;
  EXPECT_FALSE(zkp_verify(bad, 300, 299, 9, 27, g));
  EXPECT_FALSE(zkp_verify(r, 300, 593, 9, 27, g));  // out of Z_q
}

TEST(Ppc, ExhaustiveToySweepMatchesSign) {
  const GroupParams g = toy_group();
  PpcBench b(g, 17);
  for (int x = 0; x <= 11; ++x) {
    for (int y = 0; y <= 11; ++y) {
      for (int da = 1; da <= 5; ++da) {
        for (int db = 1; db <= 5; ++db) {
          const auto t = b.protocol.run(x, y, BigInt(da), BigInt(db));
          const int want = naive_sign(x, y);
          const int got = t.outcome == ComparisonOutcome::kGreater ? 1
                          : t.outcome == ComparisonOutcome::kLess  ? -1
                                                                   : 0;
          ASSERT_EQ(got, want) << x << " " << y << " " << da << " " << db;
        }
      }
    }
  }
}

TEST(Ppc, EqualOperandsGiveEqual) {
  PpcBench b(toy_group(), 3);
  for (int x = 0; x <= 11; ++x) EXPECT_EQ(b.protocol.run(x, x).outcome, ComparisonOutcome::kEqual);
}

TEST(Ppc, BoundViolationsSendNothing) {
  PpcBench b(toy_group(), 3);
  EXPECT_THROW(b.protocol.run(12, 3), DomainError);
  EXPECT_THROW(b.protocol.run(3, -1), DomainError);
  EXPECT_THROW(b.protocol.run(3, 4, BigInt(0), BigInt(1)), DomainError);
  EXPECT_THROW(b.protocol.run(3, 4, BigInt(1), BigInt(6)), DomainError);
  EXPECT_TRUE(b.net.log().empty());
}

TEST(Ppc, MessageCountIsConstant) {
  PpcBench toy(toy_group(), 1);
  EXPECT_EQ(toy.protocol.run(200 % 12, 3).log.size(), kPpcMessageCount);
  PpcBench big(modp1024_group(BigInt(1) << 32), 1);
  const BigInt x = (BigInt(1) << 64) - 1;
  EXPECT_EQ(big.protocol.run(x, x - 1).log.size(), kPpcMessageCount);
}

TEST(Ppc, CoordinatorSeesOnlyCommitmentsAndSums) {
  PpcBench b(toy_group(), 5);
  PpcTranscript t = b.protocol.run(9, 4);
  const std::string cs = b.protocol.endpoint(PartyRole::kCoordinator);
  EXPECT_EQ(labels_received_by(t, cs),
            (std::set<std::string>{"commit.a.u", "commit.a.v", "commit.b.u", "commit.b.v",
                                   "blinded.u", "blinded.v"}));
  b.protocol.prove(t);
  for (const auto& label : labels_received_by(t, cs)) {
    EXPECT_TRUE(label.rfind("commit.", 0) == 0 || label.rfind("blinded.", 0) == 0 ||
                label.rfind("Dhelp.", 0) == 0 || label.rfind("lift.", 0) == 0)
        << label;
  }
}

TEST(Ppc, EachNotaryHoldsOneShareOfEachValue) {
  PpcBench b(toy_group(), 6);
  PpcTranscript t = b.protocol.run(2, 8);
  b.protocol.prove(t);
  for (PartyRole r : {PartyRole::kNotaryA1, PartyRole::kNotaryA2, PartyRole::kNotaryB1,
                      PartyRole::kNotaryB2}) {
    const auto labels = labels_received_by(t, b.protocol.endpoint(r));
    for (const char* owner : {"a", "b"}) {
      const bool u = labels.count(std::string("share.") + owner + ".u") > 0;
      const bool v = labels.count(std::string("share.") + owner + ".v") > 0;
      EXPECT_FALSE(u && v) << role_name(r) << " holds both shares of " << owner;
    }
  }
}

TEST(Ppc, NoTrafficBetweenNotariesOfOneSide) {
  PpcBench b(toy_group(), 7);
  PpcTranscript t = b.protocol.run(5, 5);
  b.protocol.prove(t);
  const auto& a1 = b.protocol.endpoint(PartyRole::kNotaryA1);
  const auto& a2 = b.protocol.endpoint(PartyRole::kNotaryA2);
  const auto& b1 = b.protocol.endpoint(PartyRole::kNotaryB1);
  const auto& b2 = b.protocol.endpoint(PartyRole::kNotaryB2);
  for (const auto& e : t.log) {
    const std::set<std::string> ends{e.message.from, e.message.to};
    EXPECT_NE(ends, (std::set<std::string>{a1, a2}));
    EXPECT_NE(ends, (std::set<std::string>{b1, b2}));
  }
}

TEST(Ppc, ProofCompletenessOnRandomRuns) {
  const GroupParams g = toy_group();
  PpcBench b(g, 8);
  for (int i = 0; i < 200; ++i) {
    const BigInt x = b.rng.below(12), y = b.rng.below(12);
    PpcTranscript t = b.protocol.run(x, y);
    const ZkpRecord& z = b.protocol.prove(t);
    ASSERT_TRUE(zkp_verify(z, t.x_sum, t.y_sum, t.key_a, t.key_b, g));
  }
}

TEST(Ppc, UnitMultipliersLiftToPlainCommitments) {
  const GroupParams g = toy_group();
  PpcBench b(g, 9);
  PpcTranscript t = b.protocol.run(4, 9, BigInt(1), BigInt(1));
  const ZkpRecord& z = b.protocol.prove(t);
  EXPECT_EQ(z.lifted_a_u, t.committed_a.first.value);
  EXPECT_EQ(z.lifted_a_v, t.committed_a.second.value);
  EXPECT_EQ(z.lifted_b_u, t.committed_b.first.value);
  EXPECT_EQ(z.lifted_b_v, t.committed_b.second.value);
  const BigInt expected = t.committed_a.first.value * t.committed_a.second.value *
                          mod_inverse(t.committed_b.first.value * t.committed_b.second.value, g.p);
  EXPECT_EQ(z.c, mod(expected, g.p));
}

TEST(Ppc, TamperedSumFailsVerification) {
  const GroupParams g = toy_group();
  PpcBench b(g, 10);
  b.net.add_hook({"x+1", [](const net::Message& m) { return m.step == "v"; },
                  [&](net::Payload& p) { p[0].value = mod(p[0].value + 1, g.q); }});
  PpcTranscript t = b.protocol.run(7, 6);
  const ZkpRecord& z = b.protocol.prove(t);
  EXPECT_FALSE(zkp_verify(z, t.x_sum, t.y_sum, t.key_a, t.key_b, g));
}

TEST(Ppc, ProofNeedsHelpValues) {
  PpcBench b(toy_group(), 11);
  PpcTranscript none;
  EXPECT_THROW(b.protocol.prove(none), ProtocolError);
  PpcTranscript t = b.protocol.run(1, 2);
  b.protocol.notary(PartyRole::kNotaryB2).forget_help("ppc");
  EXPECT_THROW(b.protocol.prove(t), ProtocolError);
}

TEST(Ppc, PoolMustHoldFourDistinctNotaries) {
  const GroupParams g = toy_group();
  net::Net net;
  SeededRandom rng(1);
  const KeyPair k = generate_keypair(g, rng);
  EXPECT_THROW(PpcProtocol(g, k, k, {"N1", "N2", "N3"}, net, rng), SetupError);
  EXPECT_THROW(PpcProtocol(g, k, k, {"N1", "N2", "N3", "N3"}, net, rng), SetupError);
  EXPECT_THROW(PpcProtocol(g, k, k, {"N1", "N2", "N3", "Coordinator"}, net, rng), SetupError);
}

TEST(Ppc, NotaryAssignmentDrawsFromThePool) {
  const GroupParams g = toy_group();
  net::Net net;
  SeededRandom rng(12);
  const KeyPair k = generate_keypair(g, rng);
  PpcProtocol p(g, k, k, {"N1", "N2", "N3", "N4", "N5", "N6", "N7"}, net, rng);
  std::set<std::string> used;
  for (int i = 0; i < 40; ++i) {
    const auto t = p.run(1, 1);
    std::set<std::string> four;
    for (PartyRole r : {PartyRole::kNotaryA1, PartyRole::kNotaryA2, PartyRole::kNotaryB1,
                        PartyRole::kNotaryB2}) {
      four.insert(t.assignment.at(r));
    }
    EXPECT_EQ(four.size(), 4u);
    used.insert(four.begin(), four.end());
  }
  EXPECT_EQ(used.size(), 7u);
}

TEST(Ppc, SameSeedReplaysByteForByte) {
  auto export_run = [](std::uint64_t seed) {
    PpcBench b(toy_group(), seed);
    PpcTranscript t = b.protocol.run(3, 10);
    b.protocol.prove(t);
    std::ostringstream out;
    t.export_jsonl(out);
    return out.str();
  };
  EXPECT_EQ(export_run(21), export_run(21));
  EXPECT_NE(export_run(21), export_run(22));
}

TEST(Ppc, TranscriptExportShape) {
  WorkedBench b;
  PpcTranscript t = b.run();
  b.protocol.prove(t);
  std::ostringstream out;
  t.export_jsonl(out);
  std::istringstream in(out.str());
  std::vector<nlohmann::json> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 1 + kPpcMessageCount + kZkpMessageCount + 1);
  EXPECT_EQ(rows.front()["seed"], "paper");
  EXPECT_EQ(rows[1]["step"], "i");
  EXPECT_EQ(rows[1]["class"], "commitment");
  EXPECT_EQ(rows.back()["result"]["zkp"]["c"], "899");
  EXPECT_EQ(rows.back()["result"]["outcome"], "greater");
}

TEST(Ppc, ZkpRecordJsonRoundTrip) {
  WorkedBench b;
  PpcTranscript t = b.run();
  const ZkpRecord z = b.protocol.prove(t);
  EXPECT_EQ(ZkpRecord::from_json(z.to_json()), z);
  nlohmann::json broken = z.to_json();
  broken.erase("h1");
  EXPECT_THROW(ZkpRecord::from_json(broken), ParseError);
}

TEST(Legacy, HandExampleLeaksTheDifference) {
  PpcBench b(toy_group(), 13);
  const LegacyTranscript t = b.protocol.run_legacy(7, 6);
  EXPECT_EQ(t.visible_sum, 1);
  EXPECT_EQ(t.outcome, ComparisonOutcome::kGreater);
  EXPECT_EQ(t.log.size(), kLegacyMessageCount);
  const LegacyTranscript eq = b.protocol.run_legacy(100, 100);
  EXPECT_EQ(eq.visible_sum, 0);
  EXPECT_EQ(eq.outcome, ComparisonOutcome::kEqual);
}

TEST(Legacy, CoordinatorAlwaysLearnsTheDifference) {
  const GroupParams g = toy_group();
  PpcBench b(g, 14);
  for (int i = 0; i < 1000; ++i) {
    const BigInt x = b.rng.below(297), y = b.rng.below(297);
    const LegacyTranscript t = b.protocol.run_legacy(x, y);
    ASSERT_EQ(t.visible_sum, mod(x - y, g.q));
  }
}

TEST(Legacy, BoundIsHalfTheOrder) {
  PpcBench b(toy_group(), 15);
  EXPECT_NO_THROW(b.protocol.run_legacy(296, 0));
  EXPECT_THROW(b.protocol.run_legacy(297, 0), DomainError);
}

TEST(DerivedMultiplier, RangeAndDeterminism) {
  const BigInt q = toy_group().q;
  std::set<BigInt> seen;
  for (int i = 0; i < 300; ++i) {
    const BigInt d = derive_multiplier(77, "item:" + std::to_string(i), q);
    EXPECT_GE(d, 1);
    EXPECT_LT(d, q);
    EXPECT_EQ(d, derive_multiplier(77, "item:" + std::to_string(i), q));
    seen.insert(d);
  }
  EXPECT_GT(seen.size(), 200u);
  EXPECT_NE(derive_multiplier(1, "t", q), derive_multiplier(2, "t", q));
}
