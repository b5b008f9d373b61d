#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tpacas/commitment.hpp"
#include "tpacas/group.hpp"
#include "tpacas/random.hpp"
#include "tpacas/simnet.hpp"

namespace tpacas::ppc {

enum class PartyRole {
  kOwnerA,
  kOwnerB,
  kNotaryA1,
  kNotaryA2,
  kNotaryB1,
  kNotaryB2,
  kCoordinator,
};

std::string_view role_name(PartyRole role);

enum class ComparisonOutcome { kGreater, kLess, kEqual };

std::string_view to_string(ComparisonOutcome outcome);
ComparisonOutcome outcome_from_string(std::string_view text);

/// Coordinator's decision on the blinded sums: Equal when (X + Y) mod q is
/// zero, Greater when it is at most (q - 1) / 2, Less otherwise.
ComparisonOutcome decide(const BigInt& x_sum, const BigInt& y_sum,
                         const GroupParams& params);

/// What one notary keeps for one committed share of one owner.
struct NotaryHolding {
  BigInt share;
  std::optional<BigInt> help;
  BigInt multiplier;
  /// When set, per-comparison multipliers are derived from this seed.
  std::optional<BigInt> multiplier_seed;
};

class Notary {
 public:
  explicit Notary(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }

  void hold(const std::string& slot, NotaryHolding holding);
  bool holds(const std::string& slot) const { return holdings_.count(slot) > 0; }
  const NotaryHolding& holding(const std::string& slot) const;
  void forget_help(const std::string& slot);

  /// The fixed multiplier of `slot`, or one derived for `tag` when given.
  BigInt multiplier(const std::string& slot, const std::optional<std::string>& tag,
                    const GroupParams& params) const;

 private:
  std::string id_;
  std::map<std::string, NotaryHolding> holdings_;
};

using NotaryDirectory = std::map<std::string, Notary>;

/// Maps a secret seed and a comparison tag to a multiplier in [1, q - 1].
BigInt derive_multiplier(const BigInt& seed, std::string_view tag, const BigInt& q);

/// Who plays which part in one comparison over held shares.
struct Wiring {
  std::string coordinator;
  std::string notary_a1;
  std::string notary_a2;
  std::string notary_b1;
  std::string notary_b2;
  std::string slot_a;
  std::string slot_b;
  std::optional<std::string> multiplier_tag;
};

struct BlindedSums {
  BigInt x_sum;
  BigInt y_sum;
  ComparisonOutcome outcome;
};

/// Public inputs of the verification: both committed pairs and owner keys.
struct PublicCommitments {
  CommittedPair a;
  CommittedPair b;
  BigInt key_a;
  BigInt key_b;
};

struct ZkpRecord {
  BigInt scaled_help_a_u;  // D * r1
  BigInt scaled_help_a_v;  // D * r1'
  BigInt scaled_help_b_u;  // D * r2
  BigInt scaled_help_b_v;  // D * r2'
  BigInt h1;
  BigInt h2;
  BigInt c;
  BigInt lifted_a_u;  // E(u1, r1)^D
  BigInt lifted_a_v;
  BigInt lifted_b_u;
  BigInt lifted_b_v;

  nlohmann::json to_json() const;
  static ZkpRecord from_json(const nlohmann::json& j);

  friend bool operator==(const ZkpRecord&, const ZkpRecord&) = default;
};

/// Comparison steps iii-vi on shares the notaries already hold.
BlindedSums compare_held(net::Net& net, NotaryDirectory& notaries, const Wiring& wiring,
                         const GroupParams& params);

/// Help-value relays and commitment lifts, then the coordinator's assembly.
/// Throws ProtocolError if any assigned notary lacks its help value.
ZkpRecord prove_held(net::Net& net, NotaryDirectory& notaries, const Wiring& wiring,
                     const PublicCommitments& pub, const GroupParams& params);

/// Accepts iff C = g^((X+Y) mod q) * h_A^H1 * h_B^H2 mod p, where C is the
/// product of the lifted commitments and H1, H2 match the relayed values.
bool zkp_verify(const ZkpRecord& record, const BigInt& x_sum, const BigInt& y_sum,
                const BigInt& key_a, const BigInt& key_b, const GroupParams& params);

struct PpcTranscript {
  GroupParams group;
  std::string seed_label;
  BigInt key_a;
  BigInt key_b;
  CommittedPair committed_a;
  CommittedPair committed_b;
  BigInt x_sum;
  BigInt y_sum;
  ComparisonOutcome outcome = ComparisonOutcome::kEqual;
  std::optional<ZkpRecord> zkp;
  std::map<PartyRole, std::string> assignment;
  std::vector<net::LogEntry> log;
  std::size_t comparison_messages = 0;
  std::size_t zkp_messages = 0;

  /// Header line, one line per message, then a result line.
  void export_jsonl(std::ostream& out) const;
};

/// Baseline comparison: the coordinator sees (u1 - u2) and (v1 - v2) unblinded.
struct LegacyTranscript {
  BigInt val_1;
  BigInt val_2;
  BigInt visible_sum;
  ComparisonOutcome outcome = ComparisonOutcome::kEqual;
  std::vector<net::LogEntry> log;
};

inline constexpr std::size_t kPpcMessageCount = 12;
inline constexpr std::size_t kZkpMessageCount = 16;
inline constexpr std::size_t kLegacyMessageCount = 8;

/// Two owners, a notary pool and a coordinator wired over one net.
class PpcProtocol {
 public:
  PpcProtocol(GroupParams params, KeyPair owner_a, KeyPair owner_b,
              std::vector<std::string> notary_pool, net::Net& net, RandomSource& rng,
              std::string seed_label = {});

  /// Runs steps i-vi. Multipliers are drawn from [1, d_max] when absent.
  /// Throws DomainError before any message is sent if an operand or
  /// multiplier is out of range.
  PpcTranscript run(const BigInt& x, const BigInt& y,
                    std::optional<BigInt> d_a = std::nullopt,
                    std::optional<BigInt> d_b = std::nullopt);

  /// Runs the verification exchange for the latest `run` and stores the
  /// record in `transcript`.
  const ZkpRecord& prove(PpcTranscript& transcript);

  /// Requires 0 <= x, y and 2x, 2y < q.
  LegacyTranscript run_legacy(const BigInt& x, const BigInt& y);

  const GroupParams& params() const { return params_; }
  net::Net& net() { return net_; }
  Notary& notary(PartyRole role);
  const std::string& endpoint(PartyRole role) const;

 private:
  void assign_notaries();
  Wiring wiring() const;

  GroupParams params_;
  KeyPair key_a_;
  KeyPair key_b_;
  std::vector<std::string> pool_;
  net::Net& net_;
  RandomSource& rng_;
  std::string seed_label_;
  NotaryDirectory notaries_;
  std::map<PartyRole, std::string> assignment_;
  std::optional<PublicCommitments> published_;
  std::size_t run_begin_ = 0;
};

/// The hand-worked toy comparison 7 vs 6: toy group, keys a_A = 2 and a_B = 3, and a
/// scripted source replaying the shares (350, 250) and (300, 299) with help
/// values 11, 4, 12, 15.
struct WorkedExample {
  GroupParams params;
  KeyPair key_a;
  KeyPair key_b;
  BigInt x;
  BigInt y;
  BigInt d_a;
  BigInt d_b;
  std::vector<BigInt> script;
};

WorkedExample worked_example();

}  // namespace tpacas::ppc
