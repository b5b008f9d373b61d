#include "tpacas/sbb.hpp"

#include <istream>
#include <ostream>

#include "digest.hpp"
#include "tpacas/errors.hpp"

namespace tpacas::sbb {
namespace {

constexpr std::pair<RecordKind, std::string_view> kKindNames[] = {
    {RecordKind::kAnnouncement, "announcement"},
    {RecordKind::kPublicKey, "public-key"},
    {RecordKind::kBid, "bid"},
    {RecordKind::kBundle, "bundle"},
    {RecordKind::kComparisonProof, "comparison-proof"},
    {RecordKind::kOpening, "opening"},
    {RecordKind::kOutcome, "outcome"},
};

ChainReport fail(std::size_t index, std::string reason) {
  return ChainReport{false, index, std::move(reason)};
}

std::optional<SbbRecord> parse_record(const std::string& line, std::string& why) {
  const auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    why = "record is not a JSON object";
    return std::nullopt;
  }
  for (const char* key : {"index", "timestamp", "kind", "body", "chain"}) {
    if (!j.contains(key)) {
      why = std::string("record lacks '") + key + "'";
      return std::nullopt;
    }
  }
  if (!j["index"].is_number_unsigned() || !j["timestamp"].is_number_unsigned() ||
      !j["kind"].is_string() || !j["chain"].is_string()) {
    why = "record field has the wrong type";
    return std::nullopt;
  }
  const auto kind = kind_from_string(j["kind"].get<std::string>());
  if (!kind) {
    why = "unknown record kind";
    return std::nullopt;
  }
  SbbRecord r;
  r.index = j["index"].get<std::uint64_t>();
  r.timestamp = j["timestamp"].get<std::uint64_t>();
  r.kind = *kind;
  r.body = j["body"];
  r.chain = j["chain"].get<std::string>();
  return r;
}

}  // namespace

std::string_view to_string(RecordKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RecordKind> kind_from_string(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

nlohmann::json SbbRecord::to_json() const {
  return {{"index", index},
          {"timestamp", timestamp},
          {"kind", std::string(to_string(kind))},
          {"body", body},
          {"chain", chain}};
}

const std::string& genesis_hash() {
  static const std::string zero(64, '0');
  return zero;
}

std::string chain_hash(const std::string& previous, const SbbRecord& record) {
  const nlohmann::json content = {{"index", record.index},
                                  {"timestamp", record.timestamp},
                                  {"kind", std::string(to_string(record.kind))},
                                  {"body", record.body}};
  return detail::sha256_hex(previous + "|" + content.dump());
}

const SbbRecord& BulletinBoard::append(RecordKind kind, nlohmann::json body) {
  SbbRecord r;
  r.index = records_.size();
  r.timestamp = ++clock_;
  r.kind = kind;
  r.body = std::move(body);
  r.chain = chain_hash(head(), r);
  records_.push_back(std::move(r));
  return records_.back();
}

const std::string& BulletinBoard::head() const {
  return records_.empty() ? genesis_hash() : records_.back().chain;
}

void BulletinBoard::export_jsonl(std::ostream& out) const { write_export(out, records_); }

void write_export(std::ostream& out, const std::vector<SbbRecord>& records) {
  out << nlohmann::json{{"format", kExportFormat}, {"digest", kDigestName}}.dump() << '\n';
  for (const auto& r : records) out << r.to_json().dump() << '\n';
  const std::string& head = records.empty() ? genesis_hash() : records.back().chain;
  out << nlohmann::json{{"records", records.size()}, {"head", head}}.dump() << '\n';
}

void rechain(std::vector<SbbRecord>& records) {
  std::string prev = genesis_hash();
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].index = i;
    records[i].timestamp = i + 1;
    records[i].chain = chain_hash(prev, records[i]);
    prev = records[i].chain;
  }
}

ChainReport check_chain(const std::vector<SbbRecord>& records) {
  std::string prev = genesis_hash();
  std::uint64_t last_time = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SbbRecord& r = records[i];
    if (r.index != i) return fail(i, "record index out of sequence");
    if (r.timestamp <= last_time) return fail(i, "timestamp not increasing");
    if (chain_hash(prev, r) != r.chain) return fail(i, "hash chain broken");
    prev = r.chain;
    last_time = r.timestamp;
  }
  return {};
}

ChainReport read_export(std::istream& in, std::vector<SbbRecord>& records) {
  records.clear();
  std::string line;
  if (!std::getline(in, line)) return fail(0, "chain error: empty export");
  {
    const auto header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object() ||
        header.value("format", "") != kExportFormat ||
        header.value("digest", "") != kDigestName) {
      return fail(0, "chain error: unrecognised export header");
    }
  }

  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) return fail(0, "chain error: missing footer");

  // The footer is the last line; everything before it is a record.
  const auto footer = nlohmann::json::parse(lines.back(), nullptr, false);
  const bool has_footer = !footer.is_discarded() && footer.is_object() &&
                          footer.contains("records") && footer.contains("head") &&
                          !footer.contains("kind");
  if (has_footer) lines.pop_back();

  std::string prev = genesis_hash();
  std::uint64_t last_time = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string why;
    auto r = parse_record(lines[i], why);
    if (!r) return fail(i, "malformed record: " + why);
    if (r->index != i) return fail(i, "record index out of sequence");
    if (r->timestamp <= last_time) return fail(i, "timestamp not increasing");
    if (chain_hash(prev, *r) != r->chain) return fail(i, "hash chain broken");
    prev = r->chain;
    last_time = r->timestamp;
    records.push_back(std::move(*r));
  }

  if (!has_footer) return fail(records.size(), "chain error: missing footer (truncated export)");
  if (!footer["records"].is_number_unsigned() ||
      footer["records"].get<std::uint64_t>() != records.size()) {
    return fail(records.size(), "chain error: footer record count mismatch");
  }
  if (!footer["head"].is_string() || footer["head"].get<std::string>() != prev) {
    return fail(records.size(), "chain error: footer head mismatch");
  }
  return {};
}

}  // namespace tpacas::sbb
