#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tpacas/bigint.hpp"

namespace tpacas::net {

enum class PayloadClass {
  kCommitment,
  kShare,
  kScaledRelay,
  kSum,
  kHelpRelay,
  kLift,
  kOpening,
  kControl,
};

std::string_view to_string(PayloadClass cls);
PayloadClass payload_class_from_string(std::string_view text);

struct Field {
  std::string label;
  BigInt value;

  friend bool operator==(const Field&, const Field&) = default;
};

using Payload = std::vector<Field>;

/// Returns the value of the first field named `label`; throws ProtocolError.
const BigInt& field(const Payload& payload, std::string_view label);

struct Message {
  std::uint64_t seq = 0;
  std::string from;
  std::string to;
  std::string step;
  PayloadClass payload_class = PayloadClass::kControl;
  Payload payload;
};

/// Mutates a matching message in flight. Fires at most once.
struct TamperHook {
  std::string name;
  std::function<bool(const Message&)> selects;
  std::function<void(Payload&)> mutate;
  bool fired = false;
};

struct LogEntry {
  Message message;                 // as sent
  std::optional<Payload> tampered; // as delivered, when a hook fired
  std::string hook;

  const Payload& delivered() const { return tampered ? *tampered : message.payload; }
};

struct Receipt {
  std::uint64_t seq;
  bool tampered;
};

/// One observed field, with where it came from.
struct Observation {
  std::string label;
  BigInt value;
  std::string from;
  std::string to;
  std::string step;
  PayloadClass payload_class;
};

/// Union of everything a set of parties received.
class Knowledge {
 public:
  void add(Observation obs) { observations_.push_back(std::move(obs)); }

  const std::vector<Observation>& observations() const { return observations_; }
  bool contains(std::string_view label) const;
  std::optional<BigInt> value(std::string_view label) const;
  std::set<PayloadClass> classes() const;
  std::set<std::string> labels() const;

 private:
  std::vector<Observation> observations_;
};

/// In-memory confidential channels with FIFO delivery and a full log.
/// Tamper hooks run between logging and delivery.
class Net {
 public:
  void register_endpoint(const std::string& name);
  bool has_endpoint(const std::string& name) const;

  /// Restricts which payload classes may appear under `step`. Once any step
  /// is restricted, unknown steps are rejected as well.
  void allow(const std::string& step, std::set<PayloadClass> classes);

  Receipt send(Message msg);

  /// Pops the oldest message for `endpoint`. Throws ProtocolError if empty.
  Message receive(const std::string& endpoint);

  /// Pops the oldest message for `endpoint` and checks its step and sender.
  Message receive(const std::string& endpoint, std::string_view step,
                  std::string_view from);

  std::size_t pending(const std::string& endpoint) const;

  void add_hook(TamperHook hook);
  void clear_hooks() { hooks_.clear(); }
  const std::vector<TamperHook>& hooks() const { return hooks_; }

  const std::vector<LogEntry>& log() const { return log_; }
  std::size_t log_size() const { return log_.size(); }

 private:
  std::map<std::string, std::deque<Message>> mailboxes_;
  std::map<std::string, std::set<PayloadClass>> allowed_;
  std::vector<TamperHook> hooks_;
  std::vector<LogEntry> log_;
  std::uint64_t next_seq_ = 1;
};

/// Everything received by members of `grouping` in `log[begin, end)`.
Knowledge audit_views(const std::vector<LogEntry>& log,
                      const std::set<std::string>& grouping,
                      std::size_t begin = 0,
                      std::size_t end = static_cast<std::size_t>(-1));

/// One JSON object per log entry.
nlohmann::json entry_to_json(const LogEntry& entry);

/// Writes a header line followed by one line per entry in `log[begin, end)`.
void export_log(std::ostream& out, const nlohmann::json& header,
                const std::vector<LogEntry>& log, std::size_t begin = 0,
                std::size_t end = static_cast<std::size_t>(-1));

/// Tamper scenario lines look like
///   step=v from=Notary-A1 to=Coordinator label=blinded.u add=1
/// Selector keys (step, from, to, class, label) are optional; exactly one of
/// add=<int> or set=<int> is required. '#' starts a comment.
/// Additions are applied mod `modulus` when it is non-zero.
std::vector<TamperHook> parse_tamper_scenario(std::istream& in,
                                              const BigInt& modulus);

}  // namespace tpacas::net
