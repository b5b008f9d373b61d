#include "tpacas/simnet.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "tpacas/errors.hpp"

namespace tpacas::net {
namespace {

constexpr std::pair<PayloadClass, std::string_view> kClassNames[] = {
    {PayloadClass::kCommitment, "commitment"},
    {PayloadClass::kShare, "share"},
    {PayloadClass::kScaledRelay, "scaled-relay"},
    {PayloadClass::kSum, "sum"},
    {PayloadClass::kHelpRelay, "help-relay"},
    {PayloadClass::kLift, "lift"},
    {PayloadClass::kOpening, "opening"},
    {PayloadClass::kControl, "control"},
};

nlohmann::json payload_to_json(const Payload& payload) {
  // Arrays keep field order, which objects would not.
  auto out = nlohmann::json::array();
  for (const auto& f : payload) out.push_back({f.label, to_decimal(f.value)});
  return out;
}

}  // namespace

std::string_view to_string(PayloadClass cls) {
  for (const auto& [c, name] : kClassNames) {
    if (c == cls) return name;
  }
  return "unknown";
}

PayloadClass payload_class_from_string(std::string_view text) {
  for (const auto& [c, name] : kClassNames) {
    if (name == text) return c;
  }
  throw ParseError("unknown payload class '" + std::string(text) + "'");
}

const BigInt& field(const Payload& payload, std::string_view label) {
  for (const auto& f : payload) {
    if (f.label == label) return f.value;
  }
  throw ProtocolError("payload lacks field '" + std::string(label) + "'");
}

bool Knowledge::contains(std::string_view label) const {
  return std::any_of(observations_.begin(), observations_.end(),
                     [&](const Observation& o) { return o.label == label; });
}

std::optional<BigInt> Knowledge::value(std::string_view label) const {
  for (const auto& o : observations_) {
    if (o.label == label) return o.value;
  }
  return std::nullopt;
}

std::set<PayloadClass> Knowledge::classes() const {
  std::set<PayloadClass> out;
  for (const auto& o : observations_) out.insert(o.payload_class);
  return out;
}

std::set<std::string> Knowledge::labels() const {
  std::set<std::string> out;
  for (const auto& o : observations_) out.insert(o.label);
  return out;
}

void Net::register_endpoint(const std::string& name) { mailboxes_.try_emplace(name); }

bool Net::has_endpoint(const std::string& name) const { return mailboxes_.count(name) > 0; }

void Net::allow(const std::string& step, std::set<PayloadClass> classes) {
  allowed_[step].insert(classes.begin(), classes.end());
}

Receipt Net::send(Message msg) {
  if (!has_endpoint(msg.from)) throw RoutingError("unregistered sender '" + msg.from + "'");
  if (!has_endpoint(msg.to)) throw RoutingError("unregistered receiver '" + msg.to + "'");
  if (!allowed_.empty()) {
    auto it = allowed_.find(msg.step);
    if (it == allowed_.end() || it->second.count(msg.payload_class) == 0) {
      throw ProtocolError("payload class '" + std::string(to_string(msg.payload_class)) +
                          "' not allowed at step '" + msg.step + "'");
    }
  }

  msg.seq = next_seq_++;
  LogEntry entry{msg, std::nullopt, {}};
  for (auto& hook : hooks_) {
    if (hook.fired || !hook.selects(msg)) continue;
    Payload mutated = msg.payload;
    hook.mutate(mutated);
    hook.fired = true;
    entry.tampered = std::move(mutated);
    entry.hook = hook.name;
    break;
  }

  Message delivered = msg;
  if (entry.tampered) delivered.payload = *entry.tampered;
  const Receipt receipt{msg.seq, entry.tampered.has_value()};
  log_.push_back(std::move(entry));
  mailboxes_[delivered.to].push_back(std::move(delivered));
  return receipt;
}

Message Net::receive(const std::string& endpoint) {
  auto it = mailboxes_.find(endpoint);
  if (it == mailboxes_.end()) throw RoutingError("unregistered endpoint '" + endpoint + "'");
  if (it->second.empty()) throw ProtocolError("no pending message for '" + endpoint + "'");
  Message msg = std::move(it->second.front());
  it->second.pop_front();
  return msg;
}

Message Net::receive(const std::string& endpoint, std::string_view step,
                     std::string_view from) {
  Message msg = receive(endpoint);
  if (msg.step != step || msg.from != from) {
    throw ProtocolError(endpoint + " expected step " + std::string(step) + " from " +
                        std::string(from) + ", got step " + msg.step + " from " + msg.from);
  }
  return msg;
}

std::size_t Net::pending(const std::string& endpoint) const {
  auto it = mailboxes_.find(endpoint);
  return it == mailboxes_.end() ? 0 : it->second.size();
}

void Net::add_hook(TamperHook hook) { hooks_.push_back(std::move(hook)); }

Knowledge audit_views(const std::vector<LogEntry>& log,
                      const std::set<std::string>& grouping, std::size_t begin,
                      std::size_t end) {
  Knowledge out;
  end = std::min(end, log.size());
  for (std::size_t i = begin; i < end; ++i) {
    const LogEntry& entry = log[i];
    if (grouping.count(entry.message.to) == 0) continue;
    for (const Field& f : entry.delivered()) {
      out.add(Observation{f.label, f.value, entry.message.from, entry.message.to,
                          entry.message.step, entry.message.payload_class});
    }
  }
  return out;
}

nlohmann::json entry_to_json(const LogEntry& entry) {
  const Message& m = entry.message;
  nlohmann::json j = {
      {"seq", m.seq},
      {"step", m.step},
      {"from", m.from},
      {"to", m.to},
      {"class", std::string(to_string(m.payload_class))},
      {"payload", payload_to_json(m.payload)},
  };
  if (entry.tampered) {
    j["delivered"] = payload_to_json(*entry.tampered);
    j["hook"] = entry.hook;
  }
  return j;
}

void export_log(std::ostream& out, const nlohmann::json& header,
                const std::vector<LogEntry>& log, std::size_t begin, std::size_t end) {
  out << header.dump() << '\n';
  end = std::min(end, log.size());
  for (std::size_t i = begin; i < end; ++i) out << entry_to_json(log[i]).dump() << '\n';
}

std::vector<TamperHook> parse_tamper_scenario(std::istream& in, const BigInt& modulus) {
  std::vector<TamperHook> hooks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::map<std::string, std::string> kv;
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParseError("expected key=value, got '" + word + "'", line_no);
      }
      kv[word.substr(0, eq)] = word.substr(eq + 1);
    }
    if (kv.empty()) continue;

    const bool add = kv.count("add") > 0;
    const bool set = kv.count("set") > 0;
    if (add == set) throw ParseError("exactly one of add= or set= is required", line_no);
    for (const auto& [key, value] : kv) {
      static const std::set<std::string> known = {"step", "from", "to", "class",
                                                  "label", "add", "set"};
      if (known.count(key) == 0) throw ParseError("unknown key '" + key + "'", line_no);
    }
    std::optional<PayloadClass> cls;
    BigInt amount;
    try {
      if (kv.count("class")) cls = payload_class_from_string(kv["class"]);
      amount = from_decimal(add ? kv["add"] : kv["set"]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }

    TamperHook hook;
    hook.name = "scenario:" + std::to_string(line_no);
    const std::string label = kv.count("label") ? kv["label"] : "";
    hook.selects = [kv, cls, label](const Message& m) {
      if (kv.count("step") && kv.at("step") != m.step) return false;
      if (kv.count("from") && kv.at("from") != m.from) return false;
      if (kv.count("to") && kv.at("to") != m.to) return false;
      if (cls && *cls != m.payload_class) return false;
      if (!label.empty()) {
        return std::any_of(m.payload.begin(), m.payload.end(),
                           [&](const Field& f) { return f.label == label; });
      }
      return true;
    };
    hook.mutate = [label, amount, add, modulus](Payload& payload) {
      for (Field& f : payload) {
        if (!label.empty() && f.label != label) continue;
        f.value = add ? f.value + amount : amount;
        if (modulus != 0) f.value = mod(f.value, modulus);
        if (!label.empty()) break;
      }
    };
    hooks.push_back(std::move(hook));
  }
  return hooks;
}

}  // namespace tpacas::net
