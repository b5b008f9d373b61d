#pragma once

#include "tpacas/auction.hpp"
#include "tpacas/instance_io.hpp"
#include "tpacas/oracle.hpp"

// A mid-sized safe-prime group, generated once. Weights up to about 2^60
// pass the comparison bound.
inline const tpacas::GroupParams& auction_group() {
  static const tpacas::GroupParams g = [] {
    tpacas::SeededRandom rng(2024);
    return tpacas::generate_group(95, tpacas::BigInt(1) << 16, rng);
  }();
  return g;
}

inline std::vector<tpacas::auction::AgentSpec> three_agents() {
  return {{"A", 10, {1, 2}}, {"B", 8, {2, 3}}, {"C", 5, {3, 4}}};
}

// Runs the secure auction and the plaintext oracle on the same bids and
// secret ids; returns whether order, winners and payments agree.
struct Crosscheck {
  tpacas::auction::AuctionResult secure;
  tpacas::oracle::Solution plain;
  bool match = false;
};

inline Crosscheck crosscheck(const std::vector<tpacas::auction::AgentSpec>& agents,
                             unsigned items, std::uint64_t seed) {
  tpacas::SeededRandom rng(seed);
  tpacas::auction::Auction a({auction_group(), items}, rng);
  Crosscheck c;
  c.secure = tpacas::auction::run_auction(a, agents);
  std::vector<tpacas::BigInt> keys;
  for (const auto& s : agents) keys.push_back(c.secure.secret_ids.at(s.name));
  c.plain = tpacas::oracle::icasm_solve(tpacas::io::to_oracle(agents, items), keys);
  std::vector<std::string> order, winners;
  for (std::size_t i : c.plain.order) order.push_back(agents[i].name);
  for (std::size_t i : c.plain.winners) winners.push_back(agents[i].name);
  c.match = order == c.secure.order && winners == c.secure.winners;
  for (std::size_t i : c.plain.winners) {
    if (c.secure.payment(agents[i].name) != c.plain.payment(i)) c.match = false;
  }
  return c;
}
