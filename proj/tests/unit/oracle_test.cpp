#include <gtest/gtest.h>

#include <cmath>

#include "tpacas/errors.hpp"
#include "tpacas/oracle.hpp"

using namespace tpacas;
using namespace tpacas::oracle;

namespace {

Instance three_agents() {
  return Instance{4, {{10, {1, 2}}, {8, {2, 3}}, {5, {3, 4}}}};
}

bool disjoint(const std::set<unsigned>& a, const std::set<unsigned>& b) {
  for (unsigned x : a) {
    if (b.count(x)) return false;
  }
  return true;
}

// Plain subset enumeration.
BigInt brute_optimum(const Instance& inst) {
  const std::size_t n = inst.bids.size();
  BigInt best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    BigInt total = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if ((mask >> j & 1) && !disjoint(inst.bids[i].bundle, inst.bids[j].bundle)) ok = false;
      }
      total += inst.bids[i].valuation;
    }
    if (ok && total > best) best = total;
  }
  return best;
}

Rational utility(const Instance& truth, std::size_t i, const BigInt& report) {
  Instance lie = truth;
  lie.bids[i].valuation = report;
  const Solution s = icasm_solve(lie);
  for (std::size_t w : s.winners) {
    if (w == i) return Rational(truth.bids[i].valuation) - s.payment(i);
  }
  return 0;
}

}  // namespace

TEST(Oracle, ThreeAgentExample) {
  const Instance inst = three_agents();
  const Solution s = icasm_solve(inst);
  EXPECT_EQ(s.order, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(s.winners, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.payment_units.at(0), 800);
  EXPECT_EQ(s.payment(0), Rational(8));
  EXPECT_EQ(s.payment(1), 0);
  EXPECT_EQ(s.payment(2), 0);
  EXPECT_EQ(s.critical.at(0), std::optional<std::size_t>(1));
  EXPECT_FALSE(s.critical.at(2).has_value());
  EXPECT_EQ(s.welfare(inst), 15);
  EXPECT_EQ(optimal_welfare(inst), 15);
}

TEST(Oracle, TieKeysOrderEqualWeights) {
  const Instance inst{3, {{6, {1, 2}}, {6, {2, 3}}}};
  EXPECT_EQ(icasm_solve(inst, {BigInt(9), BigInt(4)}).winners, (std::vector<std::size_t>{1}));
  EXPECT_EQ(icasm_solve(inst, {BigInt(4), BigInt(9)}).winners, (std::vector<std::size_t>{0}));
  // The winner with the smaller key pays exactly the rival's weight.
  const Solution s = icasm_solve(inst, {BigInt(4), BigInt(9)});
  EXPECT_EQ(s.payment(0), Rational(6));
}

TEST(Oracle, LoneBidderPaysNothing) {
  const Solution s = icasm_solve(Instance{2, {{7, {1, 2}}}});
  EXPECT_EQ(s.winners, (std::vector<std::size_t>{0}));
  EXPECT_EQ(s.payment(0), 0);
}

TEST(Oracle, OptimumMatchesSubsetEnumeration) {
  SeededRandom rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = generate_instance(1 + rng.below(10).get_ui(), 6, 1, 30, rng);
    ASSERT_EQ(optimal_welfare(inst), brute_optimum(inst));
  }
}

TEST(Oracle, RatioWithinSquareRootBound) {
  SeededRandom rng(6);
  for (unsigned m : {4u, 9u, 16u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Instance inst = generate_instance(12, m, 1, 50, rng);
      const Rational r = approximation_ratio(inst);
      EXPECT_GE(r, 1);
      EXPECT_LE(r * r, Rational(m));
    }
  }
}

TEST(Oracle, WinnersAreDisjointAndIndividuallyRational) {
  SeededRandom rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = generate_instance(8, 7, 1, 40, rng);
    const Solution s = icasm_solve(inst);
    for (std::size_t a = 0; a < s.winners.size(); ++a) {
      const auto& ba = inst.bids[s.winners[a]];
      EXPECT_LE(s.payment(s.winners[a]), Rational(ba.valuation));
      for (std::size_t b = 0; b < a; ++b) {
        EXPECT_TRUE(disjoint(ba.bundle, inst.bids[s.winners[b]].bundle));
      }
    }
  }
}

TEST(Oracle, NoProfitableIntegerMisreport) {
  SeededRandom rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = generate_instance(5, 5, 1, 12, rng);
    for (std::size_t i = 0; i < inst.bids.size(); ++i) {
      const Rational honest = utility(inst, i, inst.bids[i].valuation);
      EXPECT_GE(honest, 0);
      for (int report = 0; report <= 20; ++report) {
        ASSERT_LE(utility(inst, i, report), honest) << "trial " << trial << " bidder " << i;
      }
    }
  }
}

TEST(Oracle, ExactSearchHasLimits) {
  SeededRandom rng(9);
  EXPECT_THROW(optimal_welfare(generate_instance(21, 5, 1, 5, rng)), DomainError);
  EXPECT_THROW(generate_instance(3, 1, 1, 5, rng), DomainError);
}

TEST(Oracle, GeneratedBundlesHaveAtLeastTwoItems) {
  SeededRandom rng(10);
  const Instance inst = generate_instance(50, 6, 3, 9, rng);
  EXPECT_EQ(inst.bids.size(), 50u);
  for (const Bid& b : inst.bids) {
    EXPECT_GE(b.bundle.size(), 2u);
    EXPECT_GE(*b.bundle.begin(), 1u);
    EXPECT_LE(*b.bundle.rbegin(), 6u);
    EXPECT_GE(b.valuation, 3);
    EXPECT_LE(b.valuation, 9);
  }
}
