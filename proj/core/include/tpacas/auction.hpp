#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tpacas/commitment.hpp"
#include "tpacas/group.hpp"
#include "tpacas/ppc.hpp"
#include "tpacas/random.hpp"
#include "tpacas/sbb.hpp"
#include "tpacas/simnet.hpp"

namespace tpacas::auction {

struct AgentSpec {
  std::string name;
  BigInt valuation;
  std::vector<unsigned> bundle;  // items numbered 1..m
};

struct AuctionConfig {
  GroupParams group;
  unsigned items = 0;
  unsigned precision = 2;
  /// Public ids of items 1..m. Drawn at setup when empty.
  std::vector<BigInt> item_ids;
  /// Size of the notary pool; 0 means two per agent.
  std::size_t notaries = 0;
};

struct AuctionResult {
  std::vector<std::string> order;
  std::vector<std::string> winners;
  std::map<std::string, BigInt> payment_units;
  std::map<std::string, std::optional<std::string>> critical;
  std::map<std::string, BigInt> secret_ids;
  std::vector<std::string> rejected;
  unsigned precision = 2;
  std::size_t value_comparisons = 0;
  std::size_t item_comparisons = 0;
  std::size_t proofs = 0;

  Rational payment(const std::string& agent) const;
};

/// One auction run: the auctioneer, the agents, their notaries and the board.
/// Steps must be called in order; `run_auction` does all of them.
class Auction {
 public:
  static constexpr const char* kAuctioneer = "AU";

  Auction(AuctionConfig config, RandomSource& rng);
  ~Auction();

  /// Issues secret ids, draws item ids when needed, pairs every agent with
  /// two notaries and publishes the announcement and the agents' keys.
  /// Throws SetupError for an empty or duplicated agent list, duplicated item
  /// ids or too small a notary pool.
  void setup(const std::vector<std::string>& agents);

  /// Validates, commits and publishes one bid. Throws BidRejected before
  /// anything is published when the bundle is too small or the scaled
  /// weight breaks the comparison bound.
  void submit_bid(const AgentSpec& spec);

  /// Shares, help values and multipliers go to each bidder's notaries.
  void hand_off();

  const std::vector<std::string>& sort_bids();
  const std::vector<std::string>& determine_winners();
  const std::map<std::string, BigInt>& determine_payments();

  /// Publishes the outcome record.
  AuctionResult finish();

  const AuctionConfig& config() const { return config_; }
  const sbb::BulletinBoard& board() const { return board_; }
  net::Net& net() { return net_; }
  const BigInt& secret_id(const std::string& agent) const;
  std::pair<std::string, std::string> notaries_of(const std::string& agent) const;
  const std::string& endpoint_of(const std::string& agent) const;

  /// {"group": record, "keys": {secret id: public key}} for verify_auction.
  nlohmann::json keys_document() const;

 private:
  struct Agent;

  Agent& agent(const std::string& name);
  const Agent& agent(const std::string& name) const;
  Agent& bidder(std::size_t i) { return *agents_[bidders_[i]]; }
  ppc::ComparisonOutcome compare(std::size_t a, const std::string& slot_a, std::size_t b,
                                 const std::string& slot_b, const std::string& kind,
                                 const std::optional<std::string>& tag);
  bool conflict(std::size_t a, std::size_t b);
  BigInt settle_payment(std::size_t winner, std::size_t critical);

  AuctionConfig config_;
  RandomSource& rng_;
  net::Net net_;
  sbb::BulletinBoard board_;
  ppc::NotaryDirectory notaries_;
  std::vector<std::unique_ptr<Agent>> agents_;
  std::vector<std::size_t> bidders_;  // agents with a published bid
  std::vector<std::size_t> order_;
  std::vector<std::size_t> winners_;
  std::vector<std::string> order_names_;
  std::vector<std::string> winner_names_;
  std::map<std::string, BigInt> payments_;
  std::map<std::size_t, std::optional<std::size_t>> critical_;
  std::map<std::pair<std::size_t, std::size_t>, bool> conflicts_;
  std::size_t value_comparisons_ = 0;
  std::size_t item_comparisons_ = 0;
  bool handed_off_ = false;
};

/// Runs every step. Rejected bids are reported in the result, not thrown.
AuctionResult run_auction(Auction& auction, const std::vector<AgentSpec>& agents);

/// Chance that an observer guesses a winner's exact bundle from its size s
/// among m items: 1 / (2^m - 2^(m-s)). Throws DomainError unless 1 <= s <= m.
Rational topology_leak_probability(unsigned s, unsigned m);

struct VerifyReport {
  bool ok = true;
  std::optional<std::size_t> index;  // first failing record
  std::string reason;
};

/// Checks the chain, every comparison proof, and that the outcome record
/// follows from the proven comparisons. `keys` is a keys_document().
VerifyReport verify_auction(std::istream& sbb_export, const nlohmann::json& keys);

/// Same checks on records already in memory.
VerifyReport verify_records(const std::vector<sbb::SbbRecord>& records,
                            const nlohmann::json& keys);

}  // namespace tpacas::auction
