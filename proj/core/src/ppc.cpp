#include "tpacas/ppc.hpp"

#include <ostream>
#include <set>

#include "digest.hpp"
#include "tpacas/errors.hpp"

namespace tpacas::ppc {
namespace {

using net::Field;
using net::Message;
using net::PayloadClass;

constexpr std::pair<PartyRole, std::string_view> kRoleNames[] = {
    {PartyRole::kOwnerA, "Owner-A"},         {PartyRole::kOwnerB, "Owner-B"},
    {PartyRole::kNotaryA1, "Notary-A1"},     {PartyRole::kNotaryA2, "Notary-A2"},
    {PartyRole::kNotaryB1, "Notary-B1"},     {PartyRole::kNotaryB2, "Notary-B2"},
    {PartyRole::kCoordinator, "Coordinator"},
};

Notary& lookup(NotaryDirectory& notaries, const std::string& id) {
  auto it = notaries.find(id);
  if (it == notaries.end()) throw ProtocolError("unknown notary '" + id + "'");
  return it->second;
}

void post(net::Net& net, const std::string& from, const std::string& to,
          std::string step, PayloadClass cls, net::Payload payload) {
  net.send(Message{0, from, to, std::move(step), cls, std::move(payload)});
}

// One hop of a two-notary relay chain: `from` scales `value` by its multiplier
// and hands it to `to`, which scales again and forwards to the coordinator.
struct RelayLeg {
  Notary* from;
  std::string from_slot;
  Notary* to;
  std::string to_slot;
  std::string tag;  // "a.u", "a.v", "b.u", "b.v"
};

}  // namespace

std::string_view role_name(PartyRole role) {
  for (const auto& [r, name] : kRoleNames) {
    if (r == role) return name;
  }
  return "unknown";
}

std::string_view to_string(ComparisonOutcome outcome) {
  switch (outcome) {
    case ComparisonOutcome::kGreater:
      return "greater";
    case ComparisonOutcome::kLess:
      return "less";
    case ComparisonOutcome::kEqual:
      return "equal";
  }
  return "unknown";
}

ComparisonOutcome outcome_from_string(std::string_view text) {
  if (text == "greater") return ComparisonOutcome::kGreater;
  if (text == "less") return ComparisonOutcome::kLess;
  if (text == "equal") return ComparisonOutcome::kEqual;
  throw ParseError("unknown comparison outcome '" + std::string(text) + "'");
}

ComparisonOutcome decide(const BigInt& x_sum, const BigInt& y_sum, const GroupParams& params) {
  const BigInt s = mod(x_sum + y_sum, params.q);
  if (s == 0) return ComparisonOutcome::kEqual;
  // q is an odd prime, so "at most q/2" means at most (q - 1) / 2.
  if (s <= (params.q - 1) / 2) return ComparisonOutcome::kGreater;
  return ComparisonOutcome::kLess;
}

void Notary::hold(const std::string& slot, NotaryHolding holding) {
  holdings_[slot] = std::move(holding);
}

const NotaryHolding& Notary::holding(const std::string& slot) const {
  auto it = holdings_.find(slot);
  if (it == holdings_.end()) {
    throw ProtocolError("notary " + id_ + " holds nothing for slot '" + slot + "'");
  }
  return it->second;
}

void Notary::forget_help(const std::string& slot) {
  auto it = holdings_.find(slot);
  if (it != holdings_.end()) it->second.help.reset();
}

BigInt Notary::multiplier(const std::string& slot, const std::optional<std::string>& tag,
                          const GroupParams& params) const {
  const NotaryHolding& h = holding(slot);
  if (!tag) return h.multiplier;
  if (!h.multiplier_seed) {
    throw ProtocolError("notary " + id_ + " has no multiplier seed for '" + slot + "'");
  }
  return derive_multiplier(*h.multiplier_seed, *tag, params.q);
}

BigInt derive_multiplier(const BigInt& seed, std::string_view tag, const BigInt& q) {
  if (q < 3) throw DomainError("derive_multiplier: modulus too small");
  const std::string base = to_decimal(seed) + ":" + std::string(tag);
  const std::size_t want_bytes = (bit_length(q) + 64 + 7) / 8;
  std::string stream;
  for (unsigned counter = 0; stream.size() < want_bytes; ++counter) {
    stream += detail::sha256_raw(base + ":" + std::to_string(counter));
  }
  stream.resize(want_bytes);
  BigInt value;
  mpz_import(value.get_mpz_t(), stream.size(), 1, 1, 1, 0, stream.data());
  return 1 + mod(value, q - 1);
}

nlohmann::json ZkpRecord::to_json() const {
  return {
      {"scaled_help_a_u", to_decimal(scaled_help_a_u)},
      {"scaled_help_a_v", to_decimal(scaled_help_a_v)},
      {"scaled_help_b_u", to_decimal(scaled_help_b_u)},
      {"scaled_help_b_v", to_decimal(scaled_help_b_v)},
      {"h1", to_decimal(h1)},
      {"h2", to_decimal(h2)},
      {"c", to_decimal(c)},
      {"lifted_a_u", to_decimal(lifted_a_u)},
      {"lifted_a_v", to_decimal(lifted_a_v)},
      {"lifted_b_u", to_decimal(lifted_b_u)},
      {"lifted_b_v", to_decimal(lifted_b_v)},
  };
}

ZkpRecord ZkpRecord::from_json(const nlohmann::json& j) {
  auto get = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw ParseError(std::string("proof record lacks '") + key + "'");
    }
    return from_decimal(j.at(key).get<std::string>());
  };
  ZkpRecord r;
  r.scaled_help_a_u = get("scaled_help_a_u");
  r.scaled_help_a_v = get("scaled_help_a_v");
  r.scaled_help_b_u = get("scaled_help_b_u");
  r.scaled_help_b_v = get("scaled_help_b_v");
  r.h1 = get("h1");
  r.h2 = get("h2");
  r.c = get("c");
  r.lifted_a_u = get("lifted_a_u");
  r.lifted_a_v = get("lifted_a_v");
  r.lifted_b_u = get("lifted_b_u");
  r.lifted_b_v = get("lifted_b_v");
  return r;
}

BlindedSums compare_held(net::Net& net, NotaryDirectory& notaries, const Wiring& w,
                         const GroupParams& params) {
  Notary& a1 = lookup(notaries, w.notary_a1);
  Notary& a2 = lookup(notaries, w.notary_a2);
  Notary& b1 = lookup(notaries, w.notary_b1);
  Notary& b2 = lookup(notaries, w.notary_b2);
  const BigInt& q = params.q;

  // iii: owner A's notaries pass their share across.
  post(net, a1.id(), b1.id(), "iii", PayloadClass::kShare,
       {{"share.a.u", a1.holding(w.slot_a).share}});
  post(net, a2.id(), b2.id(), "iii", PayloadClass::kShare,
       {{"share.a.v", a2.holding(w.slot_a).share}});

  // iv: owner B's notaries return d_B * (share_A - share_B).
  auto scale_back = [&](Notary& self, Notary& peer, const char* in, const char* out) {
    const Message m = net.receive(self.id(), "iii", peer.id());
    const BigInt d = self.multiplier(w.slot_b, w.multiplier_tag, params);
    const BigInt diff = net::field(m.payload, in) - self.holding(w.slot_b).share;
    post(net, self.id(), peer.id(), "iv", PayloadClass::kScaledRelay,
         {{out, mod(d * diff, q)}});
  };
  scale_back(b1, a1, "share.a.u", "scaled.u");
  scale_back(b2, a2, "share.a.v", "scaled.v");

  // v: owner A's notaries apply d_A and report to the coordinator.
  auto blind = [&](Notary& self, Notary& peer, const char* in, const char* out) {
    const Message m = net.receive(self.id(), "iv", peer.id());
    const BigInt d = self.multiplier(w.slot_a, w.multiplier_tag, params);
    post(net, self.id(), w.coordinator, "v", PayloadClass::kSum,
         {{out, mod(d * net::field(m.payload, in), q)}});
  };
  blind(a1, b1, "scaled.u", "blinded.u");
  blind(a2, b2, "scaled.v", "blinded.v");

  // vi
  const Message mx = net.receive(w.coordinator, "v", a1.id());
  const Message my = net.receive(w.coordinator, "v", a2.id());
  BlindedSums out;
  out.x_sum = net::field(mx.payload, "blinded.u");
  out.y_sum = net::field(my.payload, "blinded.v");
  out.outcome = decide(out.x_sum, out.y_sum, params);
  return out;
}

ZkpRecord prove_held(net::Net& net, NotaryDirectory& notaries, const Wiring& w,
                     const PublicCommitments& pub, const GroupParams& params) {
  Notary& a1 = lookup(notaries, w.notary_a1);
  Notary& a2 = lookup(notaries, w.notary_a2);
  Notary& b1 = lookup(notaries, w.notary_b1);
  Notary& b2 = lookup(notaries, w.notary_b2);
  const std::pair<Notary*, const std::string*> holders[] = {
      {&a1, &w.slot_a}, {&a2, &w.slot_a}, {&b1, &w.slot_b}, {&b2, &w.slot_b}};
  for (const auto& [n, slot] : holders) {
    if (!n->holding(*slot).help) {
      throw ProtocolError("notary " + n->id() + " lacks the help value for '" + *slot + "'");
    }
  }

  const BigInt& q = params.q;
  const RelayLeg legs[] = {
      {&a1, w.slot_a, &b1, w.slot_b, "a.u"},
      {&a2, w.slot_a, &b2, w.slot_b, "a.v"},
      {&b1, w.slot_b, &a1, w.slot_a, "b.u"},
      {&b2, w.slot_b, &a2, w.slot_a, "b.v"},
  };

  // zkp-1: help values scaled by both multipliers on their way to the coordinator.
  for (const RelayLeg& leg : legs) {
    const BigInt d_from = leg.from->multiplier(leg.from_slot, w.multiplier_tag, params);
    const BigInt help = *leg.from->holding(leg.from_slot).help;
    post(net, leg.from->id(), leg.to->id(), "zkp-1", PayloadClass::kHelpRelay,
         {{"mhelp." + leg.tag, mod(d_from * help, q)}});

    const Message m = net.receive(leg.to->id(), "zkp-1", leg.from->id());
    const BigInt d_to = leg.to->multiplier(leg.to_slot, w.multiplier_tag, params);
    post(net, leg.to->id(), w.coordinator, "zkp-1", PayloadClass::kHelpRelay,
         {{"Dhelp." + leg.tag, mod(d_to * net::field(m.payload, "mhelp." + leg.tag), q)}});
  }

  // zkp-2: published commitments lifted to the power d_from * d_to.
  const Commitment* lifted_inputs[] = {&pub.a.first, &pub.a.second, &pub.b.first,
                                       &pub.b.second};
  for (std::size_t i = 0; i < 4; ++i) {
    const RelayLeg& leg = legs[i];
    const BigInt d_from = leg.from->multiplier(leg.from_slot, w.multiplier_tag, params);
    post(net, leg.from->id(), leg.to->id(), "zkp-2", PayloadClass::kLift,
         {{"lift1." + leg.tag, mod_exp(lifted_inputs[i]->value, d_from, params)}});

    const Message m = net.receive(leg.to->id(), "zkp-2", leg.from->id());
    const BigInt d_to = leg.to->multiplier(leg.to_slot, w.multiplier_tag, params);
    post(net, leg.to->id(), w.coordinator, "zkp-2", PayloadClass::kLift,
         {{"lift." + leg.tag,
           mod_exp(net::field(m.payload, "lift1." + leg.tag), d_to, params)}});
  }

  // The coordinator assembles the record from what it received.
  ZkpRecord rec;
  BigInt* scaled[] = {&rec.scaled_help_a_u, &rec.scaled_help_a_v, &rec.scaled_help_b_u,
                      &rec.scaled_help_b_v};
  BigInt* lifted[] = {&rec.lifted_a_u, &rec.lifted_a_v, &rec.lifted_b_u, &rec.lifted_b_v};
  for (std::size_t i = 0; i < 4; ++i) {
    const Message m = net.receive(w.coordinator, "zkp-1", legs[i].to->id());
    *scaled[i] = net::field(m.payload, "Dhelp." + legs[i].tag);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const Message m = net.receive(w.coordinator, "zkp-2", legs[i].to->id());
    *lifted[i] = net::field(m.payload, "lift." + legs[i].tag);
  }
  rec.h1 = mod(rec.scaled_help_a_u + rec.scaled_help_a_v, q);
  rec.h2 = mod(-(rec.scaled_help_b_u + rec.scaled_help_b_v), q);
  rec.c = mod(rec.lifted_a_u * rec.lifted_a_v, params.p);
  rec.c = mod(rec.c * mod_exp(rec.lifted_b_u, -1, params), params.p);
  rec.c = mod(rec.c * mod_exp(rec.lifted_b_v, -1, params), params.p);
  return rec;
}

bool zkp_verify(const ZkpRecord& r, const BigInt& x_sum, const BigInt& y_sum,
                const BigInt& key_a, const BigInt& key_b, const GroupParams& params) {
  const BigInt& q = params.q;
  const BigInt& p = params.p;
  auto in_zq = [&](const BigInt& v) { return sgn(v) >= 0 && v < q; };
  auto in_zp_star = [&](const BigInt& v) { return v >= 1 && v < p; };

  for (const BigInt* v : {&x_sum, &y_sum, &r.h1, &r.h2, &r.scaled_help_a_u,
                          &r.scaled_help_a_v, &r.scaled_help_b_u, &r.scaled_help_b_v}) {
    if (!in_zq(*v)) return false;
  }
  for (const BigInt* v : {&r.c, &r.lifted_a_u, &r.lifted_a_v, &r.lifted_b_u, &r.lifted_b_v}) {
    if (!in_zp_star(*v)) return false;
  }
  if (r.h1 != mod(r.scaled_help_a_u + r.scaled_help_a_v, q)) return false;
  if (r.h2 != mod(-(r.scaled_help_b_u + r.scaled_help_b_v), q)) return false;

  BigInt product = mod(r.lifted_a_u * r.lifted_a_v, p);
  product = mod(product * mod_exp(r.lifted_b_u, -1, params), p);
  product = mod(product * mod_exp(r.lifted_b_v, -1, params), p);
  if (product != r.c) return false;

  BigInt rhs = mod_exp(params.g, mod(x_sum + y_sum, q), params);
  rhs = mod(rhs * mod_exp(key_a, r.h1, params), p);
  rhs = mod(rhs * mod_exp(key_b, r.h2, params), p);
  return rhs == r.c;
}

void PpcTranscript::export_jsonl(std::ostream& out) const {
  nlohmann::json header = {
      {"kind", "ppc-transcript"},
      {"seed", seed_label},
      {"group", group.to_record()},
      {"key_a", to_decimal(key_a)},
      {"key_b", to_decimal(key_b)},
  };
  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [role, name] : assignment) roles[std::string(role_name(role))] = name;
  header["assignment"] = roles;
  net::export_log(out, header, log);

  nlohmann::json result = {
      {"X", to_decimal(x_sum)},
      {"Y", to_decimal(y_sum)},
      {"outcome", std::string(to_string(outcome))},
      {"messages", comparison_messages},
  };
  if (zkp) {
    result["zkp"] = zkp->to_json();
    result["zkp_messages"] = zkp_messages;
  }
  out << nlohmann::json{{"result", result}}.dump() << '\n';
}

PpcProtocol::PpcProtocol(GroupParams params, KeyPair owner_a, KeyPair owner_b,
                         std::vector<std::string> notary_pool, net::Net& net,
                         RandomSource& rng, std::string seed_label)
    : params_(std::move(params)),
      key_a_(std::move(owner_a)),
      key_b_(std::move(owner_b)),
      pool_(std::move(notary_pool)),
      net_(net),
      rng_(rng),
      seed_label_(std::move(seed_label)) {
  const std::set<std::string> distinct(pool_.begin(), pool_.end());
  if (distinct.size() != pool_.size() || pool_.size() < 4) {
    throw SetupError("a comparison needs at least four distinct notaries");
  }
  for (PartyRole r : {PartyRole::kOwnerA, PartyRole::kOwnerB, PartyRole::kCoordinator}) {
    const std::string name(role_name(r));
    if (distinct.count(name)) throw SetupError("notary name clashes with role " + name);
    net_.register_endpoint(name);
    assignment_[r] = name;
  }
  for (const auto& n : pool_) {
    net_.register_endpoint(n);
    notaries_.emplace(n, Notary(n));
  }
  net_.allow("i", {PayloadClass::kCommitment});
  net_.allow("ii", {PayloadClass::kShare});
  net_.allow("iii", {PayloadClass::kShare});
  net_.allow("iv", {PayloadClass::kScaledRelay});
  net_.allow("v", {PayloadClass::kSum});
  net_.allow("zkp-1", {PayloadClass::kHelpRelay});
  net_.allow("zkp-2", {PayloadClass::kLift});
  net_.allow("vc-ii", {PayloadClass::kShare});
  net_.allow("vc-iii", {PayloadClass::kShare});
  net_.allow("vc-iv", {PayloadClass::kSum});
}

Notary& PpcProtocol::notary(PartyRole role) {
  return lookup(notaries_, endpoint(role));
}

const std::string& PpcProtocol::endpoint(PartyRole role) const {
  auto it = assignment_.find(role);
  if (it == assignment_.end()) {
    throw ProtocolError("role " + std::string(role_name(role)) + " is not assigned yet");
  }
  return it->second;
}

void PpcProtocol::assign_notaries() {
  // Partial Fisher-Yates: four distinct notaries drawn uniformly from the pool.
  std::vector<std::string> pool = pool_;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto j = k + sample_scalar(BigInt(static_cast<unsigned long>(pool.size() - k)), rng_)
                           .get_ui();
    std::swap(pool[k], pool[j]);
  }
  assignment_[PartyRole::kNotaryA1] = pool[0];
  assignment_[PartyRole::kNotaryA2] = pool[1];
  assignment_[PartyRole::kNotaryB1] = pool[2];
  assignment_[PartyRole::kNotaryB2] = pool[3];
}

Wiring PpcProtocol::wiring() const {
  return Wiring{endpoint(PartyRole::kCoordinator),
                endpoint(PartyRole::kNotaryA1),
                endpoint(PartyRole::kNotaryA2),
                endpoint(PartyRole::kNotaryB1),
                endpoint(PartyRole::kNotaryB2),
                "ppc",
                "ppc",
                std::nullopt};
}

PpcTranscript PpcProtocol::run(const BigInt& x, const BigInt& y, std::optional<BigInt> d_a,
                               std::optional<BigInt> d_b) {
  if (!params_.operand_in_bound(x) || !params_.operand_in_bound(y)) {
    throw DomainError("operands must satisfy 0 <= x, y < q / (2 * d_max^2)");
  }
  for (const auto& d : {d_a, d_b}) {
    if (d && (*d < 1 || *d > params_.d_max)) {
      throw DomainError("multiplier must lie in [1, d_max]");
    }
  }

  run_begin_ = net_.log_size();
  assign_notaries();
  const BigInt mult_a = d_a ? *d_a : 1 + sample_scalar(params_.d_max, rng_);
  const SharedSecret secret_a = commit_shared(x, key_a_.public_key, params_, rng_);
  const BigInt mult_b = d_b ? *d_b : 1 + sample_scalar(params_.d_max, rng_);
  const SharedSecret secret_b = commit_shared(y, key_b_.public_key, params_, rng_);

  const std::string& owner_a = endpoint(PartyRole::kOwnerA);
  const std::string& owner_b = endpoint(PartyRole::kOwnerB);
  const std::string& cs = endpoint(PartyRole::kCoordinator);

  // i: commitments to the coordinator.
  post(net_, owner_a, cs, "i", PayloadClass::kCommitment,
       {{"commit.a.u", secret_a.committed.first.value},
        {"commit.a.v", secret_a.committed.second.value}});
  post(net_, owner_b, cs, "i", PayloadClass::kCommitment,
       {{"commit.b.u", secret_b.committed.first.value},
        {"commit.b.v", secret_b.committed.second.value}});
  {
    const Message ma = net_.receive(cs, "i", owner_a);
    const Message mb = net_.receive(cs, "i", owner_b);
    published_ = PublicCommitments{
        {{net::field(ma.payload, "commit.a.u")}, {net::field(ma.payload, "commit.a.v")}},
        {{net::field(mb.payload, "commit.b.u")}, {net::field(mb.payload, "commit.b.v")}},
        key_a_.public_key,
        key_b_.public_key};
  }

  // ii: each share with its help value and the owner's multiplier.
  struct Handoff {
    const std::string* owner;
    PartyRole notary;
    std::string side;
    std::string share_name;
    const BigInt* share;
    const BigInt* help;
    const BigInt* mult;
  };
  const Handoff handoffs[] = {
      {&owner_a, PartyRole::kNotaryA1, "a", "u", &secret_a.shares.u, &secret_a.help_u, &mult_a},
      {&owner_a, PartyRole::kNotaryA2, "a", "v", &secret_a.shares.v, &secret_a.help_v, &mult_a},
      {&owner_b, PartyRole::kNotaryB1, "b", "u", &secret_b.shares.u, &secret_b.help_u, &mult_b},
      {&owner_b, PartyRole::kNotaryB2, "b", "v", &secret_b.shares.v, &secret_b.help_v, &mult_b},
  };
  for (const Handoff& h : handoffs) {
    const std::string suffix = h.side + "." + h.share_name;
    post(net_, *h.owner, endpoint(h.notary), "ii", PayloadClass::kShare,
         {{"share." + suffix, *h.share}, {"help." + suffix, *h.help}, {"mult." + h.side, *h.mult}});
  }
  for (const Handoff& h : handoffs) {
    const std::string suffix = h.side + "." + h.share_name;
    Notary& n = notary(h.notary);
    const Message m = net_.receive(n.id(), "ii", *h.owner);
    n.hold("ppc", NotaryHolding{net::field(m.payload, "share." + suffix),
                                net::field(m.payload, "help." + suffix),
                                net::field(m.payload, "mult." + h.side), std::nullopt});
  }

  const BlindedSums sums = compare_held(net_, notaries_, wiring(), params_);

  PpcTranscript t;
  t.group = params_;
  t.seed_label = seed_label_;
  t.key_a = key_a_.public_key;
  t.key_b = key_b_.public_key;
  t.committed_a = published_->a;
  t.committed_b = published_->b;
  t.x_sum = sums.x_sum;
  t.y_sum = sums.y_sum;
  t.outcome = sums.outcome;
  t.assignment = assignment_;
  t.log.assign(net_.log().begin() + static_cast<std::ptrdiff_t>(run_begin_), net_.log().end());
  t.comparison_messages = t.log.size();
  return t;
}

const ZkpRecord& PpcProtocol::prove(PpcTranscript& t) {
  if (!published_) throw ProtocolError("prove called before run");
  const std::size_t begin = net_.log_size();
  t.zkp = prove_held(net_, notaries_, wiring(), *published_, params_);
  t.log.insert(t.log.end(), net_.log().begin() + static_cast<std::ptrdiff_t>(begin),
               net_.log().end());
  t.zkp_messages = net_.log_size() - begin;
  return *t.zkp;
}

LegacyTranscript PpcProtocol::run_legacy(const BigInt& x, const BigInt& y) {
  for (const BigInt* v : {&x, &y}) {
    if (sgn(*v) < 0 || 2 * *v >= params_.q) {
      throw DomainError("legacy comparison requires 0 <= x, y < q / 2");
    }
  }
  const std::size_t begin = net_.log_size();
  assign_notaries();
  const RandRep rx = rand_rep(x, params_, rng_);
  const RandRep ry = rand_rep(y, params_, rng_);

  const std::string& owner_a = endpoint(PartyRole::kOwnerA);
  const std::string& owner_b = endpoint(PartyRole::kOwnerB);
  const std::string& cs = endpoint(PartyRole::kCoordinator);
  const std::string& a1 = endpoint(PartyRole::kNotaryA1);
  const std::string& a2 = endpoint(PartyRole::kNotaryA2);
  const std::string& b1 = endpoint(PartyRole::kNotaryB1);
  const std::string& b2 = endpoint(PartyRole::kNotaryB2);

  post(net_, owner_a, a1, "vc-ii", PayloadClass::kShare, {{"share.a.u", rx.u}});
  post(net_, owner_a, a2, "vc-ii", PayloadClass::kShare, {{"share.a.v", rx.v}});
  post(net_, owner_b, b1, "vc-ii", PayloadClass::kShare, {{"share.b.u", ry.u}});
  post(net_, owner_b, b2, "vc-ii", PayloadClass::kShare, {{"share.b.v", ry.v}});
  const BigInt u1 = net::field(net_.receive(a1, "vc-ii", owner_a).payload, "share.a.u");
  const BigInt v1 = net::field(net_.receive(a2, "vc-ii", owner_a).payload, "share.a.v");
  const BigInt u2 = net::field(net_.receive(b1, "vc-ii", owner_b).payload, "share.b.u");
  const BigInt v2 = net::field(net_.receive(b2, "vc-ii", owner_b).payload, "share.b.v");

  post(net_, b1, a1, "vc-iii", PayloadClass::kShare, {{"share.b.u", u2}});
  post(net_, b2, a2, "vc-iii", PayloadClass::kShare, {{"share.b.v", v2}});
  const BigInt got_u2 = net::field(net_.receive(a1, "vc-iii", b1).payload, "share.b.u");
  const BigInt got_v2 = net::field(net_.receive(a2, "vc-iii", b2).payload, "share.b.v");

  post(net_, a1, cs, "vc-iv", PayloadClass::kSum, {{"diff.u", mod(u1 - got_u2, params_.q)}});
  post(net_, a2, cs, "vc-iv", PayloadClass::kSum, {{"diff.v", mod(v1 - got_v2, params_.q)}});

  LegacyTranscript t;
  t.val_1 = net::field(net_.receive(cs, "vc-iv", a1).payload, "diff.u");
  t.val_2 = net::field(net_.receive(cs, "vc-iv", a2).payload, "diff.v");
  t.visible_sum = mod(t.val_1 + t.val_2, params_.q);
  t.outcome = decide(t.val_1, t.val_2, params_);
  t.log.assign(net_.log().begin() + static_cast<std::ptrdiff_t>(begin), net_.log().end());
  return t;
}

WorkedExample worked_example() {
  const GroupParams params = toy_group();
  return WorkedExample{params,
                       keypair_from_secret(2, params),
                       keypair_from_secret(3, params),
                       7,
                       6,
                       2,
                       3,
                       {0, 0, 0, 350, 11, 4, 300, 12, 15}};
}

}  // namespace tpacas::ppc
