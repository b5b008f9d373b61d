#include <istream>
#include <map>
#include <set>
#include <tuple>

#include "mechanism.hpp"
#include "tpacas/auction.hpp"
#include "tpacas/errors.hpp"
#include "tpacas/fixed_point.hpp"

namespace tpacas::auction {
namespace {

using ppc::ComparisonOutcome;
using sbb::RecordKind;

struct Failure {
  std::optional<std::size_t> index;
  std::string reason;
};

[[noreturn]] void fail(std::optional<std::size_t> index, std::string reason) {
  throw Failure{index, std::move(reason)};
}

const nlohmann::json& member(const nlohmann::json& body, const char* key, std::size_t index) {
  if (!body.is_object() || !body.contains(key)) {
    fail(index, std::string("record lacks '") + key + "'");
  }
  return body.at(key);
}

BigInt number(const nlohmann::json& body, const char* key, std::size_t index) {
  const auto& v = member(body, key, index);
  if (!v.is_string()) fail(index, std::string("'") + key + "' is not a decimal string");
  try {
    return from_decimal(v.get<std::string>());
  } catch (const ParseError&) {
    fail(index, std::string("'") + key + "' is not a decimal string");
  }
}

CommittedPair pair_of(const nlohmann::json& v, std::size_t index) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string()) {
    fail(index, "malformed commitment pair");
  }
  try {
    return {{from_decimal(v[0].get<std::string>())}, {from_decimal(v[1].get<std::string>())}};
  } catch (const ParseError&) {
    fail(index, "malformed commitment pair");
  }
}

ComparisonOutcome flip(ComparisonOutcome o) {
  switch (o) {
    case ComparisonOutcome::kGreater:
      return ComparisonOutcome::kLess;
    case ComparisonOutcome::kLess:
      return ComparisonOutcome::kGreater;
    case ComparisonOutcome::kEqual:
      break;
  }
  return o;
}

struct Bidder {
  BigInt id;
  BigInt key;
  Commitment size;
  CommittedPair weight;
  std::vector<CommittedPair> entries;
  bool has_bundle = false;
};

class Replay {
 public:
  explicit Replay(const nlohmann::json& keys) {
    try {
      group_ = GroupParams::from_record(keys.at("group").get<std::string>());
      for (const auto& [id, key] : keys.at("keys").items()) {
        keys_[from_decimal(id)] = from_decimal(key.get<std::string>());
      }
    } catch (const std::exception& e) {
      fail(std::nullopt, std::string("keys file malformed: ") + e.what());
    }
  }

  void run(const std::vector<sbb::SbbRecord>& records) {
    if (records.empty()) fail(std::nullopt, "board is empty");
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      if ((i == 0) != (r.kind == RecordKind::kAnnouncement)) {
        fail(i, "the board must open with exactly one announcement");
      }
      if (outcome_index_) fail(i, "record after the outcome");
      switch (r.kind) {
        case RecordKind::kAnnouncement:
          announcement(r.body, i);
          break;
        case RecordKind::kPublicKey:
          public_key(r.body, i);
          break;
        case RecordKind::kBid:
          bid(r.body, i);
          break;
        case RecordKind::kBundle:
          bundle(r.body, i);
          break;
        case RecordKind::kComparisonProof:
          proof(r.body, i);
          break;
        case RecordKind::kOpening:
          opening(r.body, i);
          break;
        case RecordKind::kOutcome:
          outcome_index_ = i;
          break;
      }
    }
    if (!outcome_index_) fail(records.size(), "no outcome record");
    if (published_keys_.size() != keys_.size()) {
      fail(*outcome_index_, "keys file lists agents without a key record");
    }
    outcome(records[*outcome_index_].body, *outcome_index_);
  }

 private:
  std::size_t bidder_index(const BigInt& id, std::size_t index) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) fail(index, "unknown bidder " + to_decimal(id));
    return it->second;
  }

  void announcement(const nlohmann::json& body, std::size_t i) {
    const auto& g = member(body, "group", i);
    if (!g.is_string()) fail(i, "group record is not a string");
    try {
      if (!(GroupParams::from_record(g.get<std::string>()) == group_)) {
        fail(i, "announced group differs from the keys file");
      }
    } catch (const Error&) {
      fail(i, "announced group is malformed");
    }
    validate_group(group_);
    const auto& m = member(body, "items", i);
    const auto& p = member(body, "precision", i);
    if (!m.is_number_unsigned() || !p.is_number_unsigned() || m.get<unsigned>() < 1) {
      fail(i, "bad item count or precision");
    }
    items_ = m.get<unsigned>();
    precision_ = p.get<unsigned>();
  }

  void public_key(const nlohmann::json& body, std::size_t i) {
    const BigInt id = number(body, "agent", i);
    const BigInt key = number(body, "key", i);
    auto it = keys_.find(id);
    if (it == keys_.end() || it->second != key) fail(i, "key record differs from the keys file");
    if (!is_group_key(key, group_)) fail(i, "published key is not a group element");
    if (!published_keys_.insert(id).second) fail(i, "duplicate key record");
  }

  void bid(const nlohmann::json& body, std::size_t i) {
    Bidder b;
    b.id = number(body, "agent", i);
    if (!published_keys_.count(b.id)) fail(i, "bid from an agent without a key record");
    if (by_id_.count(b.id)) fail(i, "second bid from one agent");
    b.key = keys_.at(b.id);
    number(body, "value", i);
    b.size = {number(body, "size", i)};
    b.weight = pair_of(member(body, "w", i), i);
    by_id_[b.id] = bidders_.size();
    bidders_.push_back(std::move(b));
  }

  void bundle(const nlohmann::json& body, std::size_t i) {
    Bidder& b = bidders_[bidder_index(number(body, "agent", i), i)];
    if (b.has_bundle) fail(i, "second bundle from one agent");
    const auto& entries = member(body, "items", i);
    if (!entries.is_array() || entries.size() != items_) {
      fail(i, "bundle must hold exactly one commitment pair per item");
    }
    for (const auto& e : entries) b.entries.push_back(pair_of(e, i));
    b.has_bundle = true;
  }

  const CommittedPair& slot_commitment(const Bidder& b, const std::string& slot, bool value,
                                       std::size_t i) const {
    if (value) {
      if (slot != "w") fail(i, "value comparison on slot '" + slot + "'");
      return b.weight;
    }
    if (slot.rfind("item.", 0) != 0) fail(i, "item comparison on slot '" + slot + "'");
    unsigned long k = 0;
    try {
      k = std::stoul(slot.substr(5));
    } catch (const std::exception&) {
      fail(i, "bad slot '" + slot + "'");
    }
    if (!b.has_bundle || k < 1 || k > b.entries.size()) fail(i, "bad slot '" + slot + "'");
    return b.entries[k - 1];
  }

  void proof(const nlohmann::json& body, std::size_t i) {
    const auto& type = member(body, "type", i);
    if (!type.is_string() || (type != "value" && type != "item")) fail(i, "unknown proof type");
    const bool value = type == "value";
    const std::size_t a = bidder_index(number(body, "a", i), i);
    const std::size_t b = bidder_index(number(body, "b", i), i);
    if (a == b) fail(i, "an agent compared with itself");
    const auto& sa = member(body, "slot_a", i);
    const auto& sb = member(body, "slot_b", i);
    if (!sa.is_string() || !sb.is_string()) fail(i, "bad slot");
    slot_commitment(bidders_[a], sa.get<std::string>(), value, i);
    slot_commitment(bidders_[b], sb.get<std::string>(), value, i);
    const BigInt x = number(body, "X", i);
    const BigInt y = number(body, "Y", i);
    const auto& out = member(body, "outcome", i);
    ComparisonOutcome outcome;
    ppc::ZkpRecord zkp;
    try {
      outcome = ppc::outcome_from_string(out.get<std::string>());
      zkp = ppc::ZkpRecord::from_json(member(body, "zkp", i));
    } catch (const std::exception&) {
      fail(i, "malformed comparison record");
    }
    if (!ppc::zkp_verify(zkp, x, y, bidders_[a].key, bidders_[b].key, group_)) {
      fail(i, "comparison proof does not verify");
    }
    if (ppc::decide(x, y, group_) != outcome) fail(i, "recorded outcome contradicts X and Y");

    if (value) {
      ++value_count_;
      value_[{a, b}] = outcome;
    } else {
      ++item_count_;
      const unsigned k = std::stoul(sa.get<std::string>().substr(5));
      const unsigned l = std::stoul(sb.get<std::string>().substr(5));
      // Stored with the smaller bidder index first.
      const auto key = a < b ? std::tuple{a, b, k, l} : std::tuple{b, a, l, k};
      item_[key] = outcome;
    }
  }

  void opening(const nlohmann::json& body, std::size_t i) {
    const std::size_t a = bidder_index(number(body, "agent", i), i);
    const auto& field = member(body, "field", i);
    if (!field.is_string() || field != "size") fail(i, "only size openings are expected");
    const BigInt size = number(body, "value", i);
    const BigInt help = number(body, "help", i);
    const BigInt critical = number(body, "critical", i);
    if (!verify_opening(bidders_[a].size, size, help, bidders_[a].key, group_)) {
      fail(i, "size opening does not match the bid");
    }
    if (size < 2 || size > items_) fail(i, "opened bundle size out of range");
    if (!openings_.emplace(a, std::pair{size, critical}).second) fail(i, "duplicate opening");
  }

  ComparisonOutcome value_outcome(std::size_t a, std::size_t b, std::size_t at) const {
    if (auto it = value_.find({a, b}); it != value_.end()) return it->second;
    if (auto it = value_.find({b, a}); it != value_.end()) return flip(it->second);
    fail(at, "no proven comparison between bidders " + to_decimal(bidders_[a].id) + " and " +
                 to_decimal(bidders_[b].id));
  }

  bool conflict(std::size_t a, std::size_t b, std::size_t at) const {
    if (a > b) std::swap(a, b);
    std::size_t seen = 0;
    for (auto it = item_.lower_bound({a, b, 0u, 0u}); it != item_.end(); ++it) {
      const auto& [x, y, k, l] = it->first;
      if (x != a || y != b) break;
      if (it->second == ComparisonOutcome::kEqual) return true;
      ++seen;
    }
    if (seen == static_cast<std::size_t>(items_) * items_) return false;
    fail(at, "bundles of " + to_decimal(bidders_[a].id) + " and " + to_decimal(bidders_[b].id) +
                 " were not fully compared");
  }

  std::vector<std::size_t> id_list(const nlohmann::json& body, const char* key,
                                   std::size_t at) const {
    const auto& list = member(body, key, at);
    if (!list.is_array()) fail(at, std::string("'") + key + "' is not a list");
    std::vector<std::size_t> out;
    for (const auto& v : list) {
      if (!v.is_string()) fail(at, std::string("'") + key + "' holds a non-string id");
      try {
        out.push_back(bidder_index(from_decimal(v.get<std::string>()), at));
      } catch (const ParseError&) {
        fail(at, std::string("'") + key + "' holds a malformed id");
      }
    }
    return out;
  }

  void outcome(const nlohmann::json& body, std::size_t at) {
    for (const auto& b : bidders_) {
      if (!b.has_bundle) fail(at, "bidder " + to_decimal(b.id) + " has no bundle");
    }
    const auto& prec = member(body, "precision", at);
    if (!prec.is_number_unsigned() || prec.get<unsigned>() != precision_) {
      fail(at, "outcome precision differs from the announcement");
    }

    const auto order = detail::merge_sort_order(bidders_.size(), [&](std::size_t a, std::size_t b) {
      switch (value_outcome(a, b, at)) {
        case ComparisonOutcome::kGreater:
          return true;
        case ComparisonOutcome::kLess:
          return false;
        case ComparisonOutcome::kEqual:
          break;
      }
      return bidders_[a].id < bidders_[b].id;
    });
    if (id_list(body, "order", at) != order) fail(at, "order is not entailed by the proofs");

    auto conflicts = [&](std::size_t a, std::size_t b) { return conflict(a, b, at); };
    const auto winners = detail::greedy_winners(order, conflicts);
    if (id_list(body, "winners", at) != winners) {
      fail(at, "winner set is not entailed by the proofs");
    }

    const auto& payments = member(body, "payments", at);
    const auto& critical = member(body, "critical", at);
    if (!payments.is_object() || payments.size() != winners.size() || !critical.is_object() ||
        critical.size() != winners.size()) {
      fail(at, "payments must cover exactly the winners");
    }
    for (std::size_t w : winners) {
      const std::string id = to_decimal(bidders_[w].id);
      if (!payments.contains(id) || !critical.contains(id)) {
        fail(at, "winner " + id + " lacks a payment");
      }
      const BigInt units = number(payments, id.c_str(), at);
      const auto j = detail::critical_agent(order, w, conflicts);
      const auto& recorded = critical.at(id);
      if (!j) {
        if (!recorded.is_null()) fail(at, "winner " + id + " has no critical rival");
        if (units != 0) fail(at, "winner " + id + " without a rival must pay zero");
        continue;
      }
      if (!recorded.is_string() || recorded.get<std::string>() != to_decimal(bidders_[*j].id)) {
        fail(at, "wrong critical rival for winner " + id);
      }
      auto op = openings_.find(w);
      if (op == openings_.end() || op->second.second != bidders_[*j].id) {
        fail(at, "no size opening for winner " + id);
      }
      const unsigned size = op->second.first.get_ui();
      // Some positive rival weight t must price to exactly these units.
      bool priced = false;
      if (units > 0) {
        const BigInt t0 = isqrt(units * units / size);
        for (BigInt t = t0 > 1 ? t0 - 1 : BigInt(1); t <= t0 + 1 && !priced; ++t) {
          priced = threshold_payment_units(t, size) == units;
        }
      }
      if (!priced) fail(at, "payment of winner " + id + " is not a valid threshold price");
    }
    if (openings_.size() != static_cast<std::size_t>(
                                std::count_if(winners.begin(), winners.end(), [&](std::size_t w) {
                                  return critical.at(to_decimal(bidders_[w].id)).is_string();
                                }))) {
      fail(at, "size openings for agents that pay nothing");
    }

    const auto counts_match = [&](const char* key, std::size_t expected) {
      const auto& v = member(body, key, at);
      return v.is_number_unsigned() && v.get<std::size_t>() == expected;
    };
    if (!counts_match("value_comparisons", value_count_) ||
        !counts_match("item_comparisons", item_count_) ||
        !counts_match("proofs", value_count_ + item_count_)) {
      fail(at, "comparison counts differ from the proofs on the board");
    }
  }

  GroupParams group_;
  std::map<BigInt, BigInt> keys_;
  std::set<BigInt> published_keys_;
  unsigned items_ = 0;
  unsigned precision_ = 0;
  std::vector<Bidder> bidders_;
  std::map<BigInt, std::size_t> by_id_;
  std::map<std::pair<std::size_t, std::size_t>, ComparisonOutcome> value_;
  std::map<std::tuple<std::size_t, std::size_t, unsigned, unsigned>, ComparisonOutcome> item_;
  std::map<std::size_t, std::pair<BigInt, BigInt>> openings_;
  std::size_t value_count_ = 0;
  std::size_t item_count_ = 0;
  std::optional<std::size_t> outcome_index_;
};

}  // namespace

VerifyReport verify_records(const std::vector<sbb::SbbRecord>& records,
                            const nlohmann::json& keys) {
  const sbb::ChainReport chain = sbb::check_chain(records);
  if (!chain.ok) return {false, chain.index, chain.reason};
  try {
    Replay replay(keys);
    replay.run(records);
  } catch (const Failure& f) {
    return {false, f.index, f.reason};
  } catch (const Error& e) {
    return {false, std::nullopt, e.what()};
  }
  return {};
}

VerifyReport verify_auction(std::istream& sbb_export, const nlohmann::json& keys) {
  std::vector<sbb::SbbRecord> records;
  const sbb::ChainReport chain = sbb::read_export(sbb_export, records);
  if (!chain.ok) return {false, chain.index, chain.reason};
  return verify_records(records, keys);
}

}  // namespace tpacas::auction
