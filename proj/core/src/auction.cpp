#include "tpacas/auction.hpp"

#include <algorithm>
#include <set>

#include "mechanism.hpp"
#include "tpacas/errors.hpp"
#include "tpacas/fixed_point.hpp"

namespace tpacas::auction {
namespace {

using net::PayloadClass;
using ppc::ComparisonOutcome;

nlohmann::json dec(const BigInt& v) { return to_decimal(v); }

nlohmann::json pair_json(const CommittedPair& c) {
  return nlohmann::json::array({dec(c.first.value), dec(c.second.value)});
}

void post(net::Net& net, const std::string& from, const std::string& to, const char* step,
          PayloadClass cls, net::Payload payload) {
  net.send(net::Message{0, from, to, step, cls, std::move(payload)});
}

}  // namespace

struct Auction::Agent {
  std::string name;
  std::string endpoint;
  BigInt id;
  KeyPair key;
  std::string notary_1;
  std::string notary_2;
  std::vector<BigInt> item_ids;  // as received from the auctioneer

  // Private bid material.
  BigInt valuation;
  std::vector<unsigned> bundle;
  Opening value_opening;
  Opening size_opening;
  SharedSecret weight;
  std::vector<SharedSecret> entries;
  BigInt multiplier;
  BigInt multiplier_seed;

  // Published commitments, as the auctioneer read them off the board.
  Commitment value_commitment;
  Commitment size_commitment;
  CommittedPair weight_commitment;
  std::vector<CommittedPair> entry_commitments;
};

Rational AuctionResult::payment(const std::string& agent) const {
  auto it = payment_units.find(agent);
  if (it == payment_units.end()) return 0;
  return units_to_rational(it->second, precision);
}

Auction::Auction(AuctionConfig config, RandomSource& rng)
    : config_(std::move(config)), rng_(rng) {
  validate_group(config_.group);
  if (config_.items < 1) throw SetupError("an auction needs at least one item");
  net_.register_endpoint(kAuctioneer);
  net_.allow("items", {PayloadClass::kControl});
  net_.allow("handoff", {PayloadClass::kShare});
  net_.allow("iii", {PayloadClass::kShare});
  net_.allow("iv", {PayloadClass::kScaledRelay});
  net_.allow("v", {PayloadClass::kSum});
  net_.allow("zkp-1", {PayloadClass::kHelpRelay});
  net_.allow("zkp-2", {PayloadClass::kLift});
  net_.allow("pay-flag", {PayloadClass::kControl});
  net_.allow("pay-open-w", {PayloadClass::kOpening});
  net_.allow("pay-open-size", {PayloadClass::kOpening});
  net_.allow("pay-forward", {PayloadClass::kOpening});
  net_.allow("pay-result", {PayloadClass::kControl});
}

Auction::~Auction() = default;

Auction::Agent& Auction::agent(const std::string& name) {
  return const_cast<Agent&>(std::as_const(*this).agent(name));
}

const Auction::Agent& Auction::agent(const std::string& name) const {
  for (const auto& a : agents_) {
    if (a->name == name) return *a;
  }
  throw ProtocolError("unknown agent '" + name + "'");
}

const BigInt& Auction::secret_id(const std::string& name) const { return agent(name).id; }

std::pair<std::string, std::string> Auction::notaries_of(const std::string& name) const {
  const Agent& a = agent(name);
  return {a.notary_1, a.notary_2};
}

const std::string& Auction::endpoint_of(const std::string& name) const {
  return agent(name).endpoint;
}

nlohmann::json Auction::keys_document() const {
  nlohmann::json keys = nlohmann::json::object();
  for (const auto& a : agents_) keys[to_decimal(a->id)] = to_decimal(a->key.public_key);
  return {{"group", config_.group.to_record()}, {"keys", keys}};
}

void Auction::setup(const std::vector<std::string>& names) {
  if (!agents_.empty()) throw ProtocolError("setup already done");
  if (names.empty()) throw SetupError("an auction needs at least one agent");
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    throw SetupError("agent names must be distinct");
  }
  const GroupParams& g = config_.group;
  const std::size_t pool = config_.notaries == 0 ? 2 * names.size() : config_.notaries;
  if (pool < 2 * names.size()) {
    throw SetupError("every agent needs its own pair of notaries: pool of " +
                     std::to_string(pool) + " for " + std::to_string(names.size()) +
                     " agents");
  }

  if (config_.item_ids.empty()) {
    std::set<BigInt> seen;
    while (config_.item_ids.size() < config_.items) {
      BigInt id = 1 + sample_scalar(g.q - 1, rng_);
      if (seen.insert(id).second) config_.item_ids.push_back(id);
    }
  }
  if (config_.item_ids.size() != config_.items) {
    throw SetupError("expected " + std::to_string(config_.items) + " item ids");
  }
  for (const BigInt& id : config_.item_ids) {
    if (sgn(id) < 0 || id >= g.q) throw SetupError("item ids must lie in [0, q)");
  }
  if (std::set<BigInt>(config_.item_ids.begin(), config_.item_ids.end()).size() !=
      config_.item_ids.size()) {
    throw SetupError("item ids must be distinct");
  }

  std::vector<std::string> pool_names;
  for (std::size_t i = 0; i < pool; ++i) {
    pool_names.push_back("N" + std::to_string(i + 1));
    net_.register_endpoint(pool_names.back());
    notaries_.emplace(pool_names.back(), ppc::Notary(pool_names.back()));
  }
  shuffle(pool_names, rng_);

  std::set<BigInt> ids;
  const BigInt id_range = BigInt(1) << 32;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto a = std::make_unique<Agent>();
    a->name = names[i];
    a->endpoint = "agent:" + names[i];
    do {
      a->id = 1 + sample_scalar(id_range - 1, rng_);
    } while (!ids.insert(a->id).second);
    a->key = generate_keypair(g, rng_);
    a->notary_1 = pool_names[2 * i];
    a->notary_2 = pool_names[2 * i + 1];
    net_.register_endpoint(a->endpoint);
    agents_.push_back(std::move(a));
  }

  board_.append(sbb::RecordKind::kAnnouncement,
                {{"group", g.to_record()},
                 {"items", config_.items},
                 {"precision", config_.precision},
                 {"agents", names.size()},
                 {"notaries", pool}});
  for (const auto& a : agents_) {
    board_.append(sbb::RecordKind::kPublicKey,
                  {{"agent", dec(a->id)}, {"key", dec(a->key.public_key)}});
  }

  // Item ids travel privately to the agents only.
  net::Payload ids_payload;
  for (unsigned k = 0; k < config_.items; ++k) {
    ids_payload.push_back({"item." + std::to_string(k + 1), config_.item_ids[k]});
  }
  for (const auto& a : agents_) {
    post(net_, kAuctioneer, a->endpoint, "items", PayloadClass::kControl, ids_payload);
    const net::Message m = net_.receive(a->endpoint, "items", kAuctioneer);
    for (unsigned k = 0; k < config_.items; ++k) {
      a->item_ids.push_back(net::field(m.payload, "item." + std::to_string(k + 1)));
    }
  }
}

void Auction::submit_bid(const AgentSpec& spec) {
  Agent& a = agent(spec.name);
  for (std::size_t b : bidders_) {
    if (agents_[b]->name == spec.name) throw BidRejected(spec.name, "already bid");
  }
  const GroupParams& g = config_.group;
  const std::set<unsigned> items(spec.bundle.begin(), spec.bundle.end());
  if (items.size() != spec.bundle.size()) throw BidRejected(spec.name, "repeated item");
  if (items.size() < 2) throw BidRejected(spec.name, "bundle needs at least two items");
  if (*items.begin() < 1 || *items.rbegin() > config_.items) {
    throw BidRejected(spec.name, "item outside 1.." + std::to_string(config_.items));
  }
  if (spec.valuation < 1 || spec.valuation >= g.q) {
    throw BidRejected(spec.name, "valuation must be a positive integer below q");
  }
  const auto size = static_cast<unsigned>(items.size());
  const BigInt w = scaled_weight(spec.valuation, size, config_.precision);
  if (!g.operand_in_bound(w)) {
    throw BidRejected(spec.name, "scaled weight " + to_decimal(w) +
                                     " breaks the bound 2 * d_max^2 * w < q");
  }

  a.valuation = spec.valuation;
  a.bundle.assign(items.begin(), items.end());
  a.multiplier = 1 + sample_scalar(g.d_max, rng_);
  a.multiplier_seed = sample_scalar(g.q, rng_);
  a.value_opening = {spec.valuation, sample_scalar(g.q, rng_)};
  a.size_opening = {BigInt(size), sample_scalar(g.q, rng_)};
  a.weight = commit_shared(w, a.key.public_key, g, rng_);

  std::vector<unsigned> slots(a.bundle);
  while (slots.size() < config_.items) {
    slots.push_back(a.bundle[sample_scalar(BigInt(size), rng_).get_ui()]);
  }
  shuffle(slots, rng_);
  a.entries.clear();
  for (unsigned item : slots) {
    a.entries.push_back(commit_shared(a.item_ids[item - 1], a.key.public_key, g, rng_));
  }

  const Commitment value_c =
      commit(a.value_opening.message, a.value_opening.help, a.key.public_key, g);
  const Commitment size_c =
      commit(a.size_opening.message, a.size_opening.help, a.key.public_key, g);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : a.entries) entries.push_back(pair_json(e.committed));
  board_.append(sbb::RecordKind::kBid, {{"agent", dec(a.id)},
                                        {"value", dec(value_c.value)},
                                        {"size", dec(size_c.value)},
                                        {"w", pair_json(a.weight.committed)}});
  board_.append(sbb::RecordKind::kBundle, {{"agent", dec(a.id)}, {"items", entries}});

  a.value_commitment = value_c;
  a.size_commitment = size_c;
  a.weight_commitment = a.weight.committed;
  a.entry_commitments.clear();
  for (const auto& e : a.entries) a.entry_commitments.push_back(e.committed);

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].get() == &a) bidders_.push_back(i);
  }
}

void Auction::hand_off() {
  if (handed_off_) throw ProtocolError("hand-off already done");
  for (std::size_t i = 0; i < bidders_.size(); ++i) {
    Agent& a = bidder(i);
    for (int side = 0; side < 2; ++side) {
      const auto& share = [&](const SharedSecret& s) -> const BigInt& {
        return side == 0 ? s.shares.u : s.shares.v;
      };
      const auto& help = [&](const SharedSecret& s) -> const BigInt& {
        return side == 0 ? s.help_u : s.help_v;
      };
      net::Payload p = {{"share.w", share(a.weight)},
                        {"help.w", help(a.weight)},
                        {"mult.w", a.multiplier},
                        {"mult_seed", a.multiplier_seed}};
      for (std::size_t k = 0; k < a.entries.size(); ++k) {
        const std::string slot = "item." + std::to_string(k + 1);
        p.push_back({"share." + slot, share(a.entries[k])});
        p.push_back({"help." + slot, help(a.entries[k])});
      }
      const std::string& to = side == 0 ? a.notary_1 : a.notary_2;
      post(net_, a.endpoint, to, "handoff", PayloadClass::kShare, std::move(p));
    }
    for (const std::string* to : {&a.notary_1, &a.notary_2}) {
      const net::Message m = net_.receive(*to, "handoff", a.endpoint);
      ppc::Notary& n = notaries_.at(*to);
      const BigInt d = net::field(m.payload, "mult.w");
      const BigInt seed = net::field(m.payload, "mult_seed");
      n.hold("w", {net::field(m.payload, "share.w"), net::field(m.payload, "help.w"), d, seed});
      for (unsigned k = 1; k <= config_.items; ++k) {
        const std::string slot = "item." + std::to_string(k);
        n.hold(slot, {net::field(m.payload, "share." + slot),
                      net::field(m.payload, "help." + slot), d, seed});
      }
    }
  }
  handed_off_ = true;
}

ComparisonOutcome Auction::compare(std::size_t ia, const std::string& slot_a, std::size_t ib,
                                   const std::string& slot_b, const std::string& kind,
                                   const std::optional<std::string>& tag) {
  Agent& a = bidder(ia);
  Agent& b = bidder(ib);
  const ppc::Wiring w{kAuctioneer, a.notary_1, a.notary_2, b.notary_1,
                      b.notary_2,  slot_a,     slot_b,     tag};
  auto published = [&](const Agent& x, const std::string& slot) -> const CommittedPair& {
    if (slot == "w") return x.weight_commitment;
    return x.entry_commitments.at(std::stoul(slot.substr(5)) - 1);
  };
  const ppc::PublicCommitments pub{published(a, slot_a), published(b, slot_b),
                                   a.key.public_key, b.key.public_key};

  const ppc::BlindedSums sums = ppc::compare_held(net_, notaries_, w, config_.group);
  const ppc::ZkpRecord rec = ppc::prove_held(net_, notaries_, w, pub, config_.group);
  const std::string label = kind + ":" + to_decimal(a.id) + ":" + slot_a + ":" +
                            to_decimal(b.id) + ":" + slot_b;
  if (!ppc::zkp_verify(rec, sums.x_sum, sums.y_sum, a.key.public_key, b.key.public_key,
                       config_.group)) {
    throw AuctionAborted(label, "comparison proof rejected");
  }
  board_.append(sbb::RecordKind::kComparisonProof,
                {{"type", kind},
                 {"a", dec(a.id)},
                 {"slot_a", slot_a},
                 {"b", dec(b.id)},
                 {"slot_b", slot_b},
                 {"X", dec(sums.x_sum)},
                 {"Y", dec(sums.y_sum)},
                 {"outcome", std::string(ppc::to_string(sums.outcome))},
                 {"zkp", rec.to_json()}});
  ++(kind == "value" ? value_comparisons_ : item_comparisons_);
  return sums.outcome;
}

bool Auction::conflict(std::size_t a, std::size_t b) {
  const auto key = std::minmax(a, b);
  auto it = conflicts_.find(key);
  if (it != conflicts_.end()) return it->second;
  // The earlier bidder (in submission order) plays the first owner.
  const auto [first, second] = key;
  const std::string id_a = to_decimal(bidder(first).id);
  const std::string id_b = to_decimal(bidder(second).id);
  bool clash = false;
  for (unsigned k = 1; k <= config_.items && !clash; ++k) {
    for (unsigned l = 1; l <= config_.items && !clash; ++l) {
      const std::string slot_a = "item." + std::to_string(k);
      const std::string slot_b = "item." + std::to_string(l);
      const std::string tag = "item:" + id_a + ":" + std::to_string(k) + ":" + id_b + ":" +
                              std::to_string(l);
      clash = compare(first, slot_a, second, slot_b, "item", tag) == ComparisonOutcome::kEqual;
    }
  }
  conflicts_.emplace(key, clash);
  return clash;
}

const std::vector<std::string>& Auction::sort_bids() {
  if (!handed_off_) throw ProtocolError("sorting needs the post-bidding hand-off");
  order_ = detail::merge_sort_order(bidders_.size(), [&](std::size_t a, std::size_t b) {
    switch (compare(a, "w", b, "w", "value", std::nullopt)) {
      case ComparisonOutcome::kGreater:
        return true;
      case ComparisonOutcome::kLess:
        return false;
      case ComparisonOutcome::kEqual:
        break;
    }
    return bidder(a).id < bidder(b).id;
  });
  order_names_.clear();
  for (std::size_t i : order_) order_names_.push_back(bidder(i).name);
  return order_names_;
}

const std::vector<std::string>& Auction::determine_winners() {
  if (order_.size() != bidders_.size()) throw ProtocolError("winners need the sorted order");
  winners_ = detail::greedy_winners(order_, [&](std::size_t a, std::size_t b) {
    return conflict(a, b);
  });
  winner_names_.clear();
  for (std::size_t i : winners_) winner_names_.push_back(bidder(i).name);
  return winner_names_;
}

BigInt Auction::settle_payment(std::size_t wi, std::size_t ji) {
  const GroupParams& g = config_.group;
  Agent& winner = bidder(wi);
  Agent& rival = bidder(ji);
  const std::string& notary = rival.notary_1;

  // Ties go to the smaller id, so a winner with the larger id must strictly
  // beat the rival's weight.
  post(net_, kAuctioneer, notary, "pay-flag", PayloadClass::kControl,
       {{"adjust", BigInt(winner.id > rival.id ? 1 : 0)}});
  post(net_, rival.endpoint, notary, "pay-open-w", PayloadClass::kOpening,
       {{"share.w.u", rival.weight.shares.u},
        {"help.w.u", rival.weight.help_u},
        {"share.w.v", rival.weight.shares.v},
        {"help.w.v", rival.weight.help_v}});
  post(net_, winner.endpoint, kAuctioneer, "pay-open-size", PayloadClass::kOpening,
       {{"size", winner.size_opening.message}, {"help.size", winner.size_opening.help}});

  const net::Message size_msg = net_.receive(kAuctioneer, "pay-open-size", winner.endpoint);
  const BigInt size = net::field(size_msg.payload, "size");
  const BigInt size_help = net::field(size_msg.payload, "help.size");
  if (!verify_opening(winner.size_commitment, size, size_help, winner.key.public_key, g)) {
    throw AuctionAborted(winner.name, "bundle-size opening does not match the board");
  }
  board_.append(sbb::RecordKind::kOpening, {{"agent", dec(winner.id)},
                                            {"field", "size"},
                                            {"value", dec(size)},
                                            {"help", dec(size_help)},
                                            {"critical", dec(rival.id)}});
  post(net_, kAuctioneer, notary, "pay-forward", PayloadClass::kOpening,
       {{"size", size}, {"help.size", size_help}});

  // The rival's notary checks both openings against the board and prices.
  const BigInt adjust =
      net::field(net_.receive(notary, "pay-flag", kAuctioneer).payload, "adjust");
  const net::Message w_msg = net_.receive(notary, "pay-open-w", rival.endpoint);
  const BigInt u = net::field(w_msg.payload, "share.w.u");
  const BigInt v = net::field(w_msg.payload, "share.w.v");
  if (!verify_opening(rival.weight_commitment.first, u, net::field(w_msg.payload, "help.w.u"),
                      rival.key.public_key, g) ||
      !verify_opening(rival.weight_commitment.second, v,
                      net::field(w_msg.payload, "help.w.v"), rival.key.public_key, g)) {
    throw AuctionAborted(rival.name, "weight opening does not match the board");
  }
  const net::Message fwd = net_.receive(notary, "pay-forward", kAuctioneer);
  const BigInt fwd_size = net::field(fwd.payload, "size");
  if (!verify_opening(winner.size_commitment, fwd_size, net::field(fwd.payload, "help.size"),
                      winner.key.public_key, g) ||
      fwd_size < 1 || fwd_size > config_.items) {
    throw AuctionAborted(kAuctioneer, "forwarded size opening does not match the board");
  }
  const BigInt rival_w = mod(u + v, g.q);
  const BigInt units = threshold_payment_units(rival_w + adjust, fwd_size.get_ui());
  post(net_, notary, kAuctioneer, "pay-result", PayloadClass::kControl, {{"payment", units}});
  return net::field(net_.receive(kAuctioneer, "pay-result", notary).payload, "payment");
}

const std::map<std::string, BigInt>& Auction::determine_payments() {
  if (winners_.empty() && !bidders_.empty()) {
    throw ProtocolError("payments need the winner set");
  }
  payments_.clear();
  critical_.clear();
  for (std::size_t wi : winners_) {
    const auto j = detail::critical_agent(order_, wi, [&](std::size_t a, std::size_t b) {
      return conflict(a, b);
    });
    critical_[wi] = j;
    payments_[bidder(wi).name] = j ? settle_payment(wi, *j) : BigInt(0);
  }
  return payments_;
}

AuctionResult Auction::finish() {
  AuctionResult r;
  r.precision = config_.precision;
  r.order = order_names_;
  r.winners = winner_names_;
  r.payment_units = payments_;
  r.value_comparisons = value_comparisons_;
  r.item_comparisons = item_comparisons_;
  r.proofs = value_comparisons_ + item_comparisons_;
  for (const auto& a : agents_) r.secret_ids[a->name] = a->id;

  nlohmann::json order = nlohmann::json::array();
  nlohmann::json winners = nlohmann::json::array();
  nlohmann::json payments = nlohmann::json::object();
  nlohmann::json critical = nlohmann::json::object();
  for (std::size_t i : order_) order.push_back(dec(bidder(i).id));
  for (std::size_t i : winners_) {
    const Agent& w = bidder(i);
    winners.push_back(dec(w.id));
    payments[to_decimal(w.id)] = dec(payments_.at(w.name));
    const auto& j = critical_.at(i);
    critical[to_decimal(w.id)] = j ? dec(bidder(*j).id) : nlohmann::json(nullptr);
    r.critical[w.name] = j ? std::optional<std::string>(bidder(*j).name) : std::nullopt;
  }
  board_.append(sbb::RecordKind::kOutcome, {{"order", order},
                                            {"winners", winners},
                                            {"payments", payments},
                                            {"critical", critical},
                                            {"precision", config_.precision},
                                            {"value_comparisons", value_comparisons_},
                                            {"item_comparisons", item_comparisons_},
                                            {"proofs", r.proofs}});
  return r;
}

AuctionResult run_auction(Auction& auction, const std::vector<AgentSpec>& agents) {
  std::vector<std::string> names;
  for (const auto& a : agents) names.push_back(a.name);
  auction.setup(names);
  std::vector<std::string> rejected;
  for (const auto& a : agents) {
    try {
      auction.submit_bid(a);
    } catch (const BidRejected& e) {
      rejected.push_back(e.agent());
    }
  }
  auction.hand_off();
  auction.sort_bids();
  auction.determine_winners();
  auction.determine_payments();
  AuctionResult r = auction.finish();
  r.rejected = rejected;
  return r;
}

Rational topology_leak_probability(unsigned s, unsigned m) {
  if (s < 1 || s > m) throw DomainError("bundle size must satisfy 1 <= s <= m");
  BigInt all, rest;
  mpz_ui_pow_ui(all.get_mpz_t(), 2, m);
  mpz_ui_pow_ui(rest.get_mpz_t(), 2, m - s);
  Rational r(BigInt(1), all - rest);
  r.canonicalize();
  return r;
}

}  // namespace tpacas::auction
