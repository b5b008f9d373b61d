#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace tpacas::sbb {

enum class RecordKind {
  kAnnouncement,
  kPublicKey,
  kBid,
  kBundle,
  kComparisonProof,
  kOpening,
  kOutcome,
};

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> kind_from_string(std::string_view text);

struct SbbRecord {
  std::uint64_t index = 0;
  std::uint64_t timestamp = 0;
  RecordKind kind = RecordKind::kAnnouncement;
  nlohmann::json body;
  std::string chain;  // hex sha256 over the previous chain value and this record

  nlohmann::json to_json() const;
};

inline constexpr std::string_view kExportFormat = "tpacas-sbb/1";
inline constexpr std::string_view kDigestName = "sha256";

/// Chain value preceding the first record.
const std::string& genesis_hash();

std::string chain_hash(const std::string& previous, const SbbRecord& record);

/// Append-only, hash-chained board with a logical clock.
class BulletinBoard {
 public:
  const SbbRecord& append(RecordKind kind, nlohmann::json body);

  const std::vector<SbbRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const std::string& head() const;

  void export_jsonl(std::ostream& out) const;

 private:
  std::vector<SbbRecord> records_;
  std::uint64_t clock_ = 0;
};

/// Header line, one line per record, footer line.
void write_export(std::ostream& out, const std::vector<SbbRecord>& records);

/// Recomputes every index, timestamp and chain value in place. Lets tests
/// build exports whose chain is intact but whose content is wrong.
void rechain(std::vector<SbbRecord>& records);

struct ChainReport {
  bool ok = true;
  std::optional<std::size_t> index;  // first bad record; size() for a bad footer
  std::string reason;
};

/// Reads an export and checks it end to end. Records that parse are kept in
/// `records` even when the check fails.
ChainReport read_export(std::istream& in, std::vector<SbbRecord>& records);

/// Checks indices, timestamps and chain values of already parsed records.
ChainReport check_chain(const std::vector<SbbRecord>& records);

}  // namespace tpacas::sbb
