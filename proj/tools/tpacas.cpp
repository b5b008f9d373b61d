// Command line entry points: single comparisons, full auctions, export
// verification and the bundle-size leak figure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tpacas/auction.hpp"
#include "tpacas/errors.hpp"
#include "tpacas/fixed_point.hpp"
#include "tpacas/group.hpp"
#include "tpacas/instance_io.hpp"
#include "tpacas/oracle.hpp"
#include "tpacas/ppc.hpp"

namespace fs = std::filesystem;
using namespace tpacas;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitBadInput = 2;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("seed must be an unsigned integer or 'paper'");
}

// Generated groups use a 2^k multiplier bound with d_max^2 well below q.
BigInt default_d_max(unsigned p_bits) {
  const unsigned k = std::min(32u, (p_bits - 1) / 4);
  return BigInt(1) << k;
}

GroupParams group_for_bits(unsigned p_bits, const BigInt& d_max, RandomSource& rng) {
  if (p_bits == 1024) return modp1024_group(d_max);
  if (p_bits < 17) throw DomainError("--bits must be at least 17");
  return generate_group(p_bits - 1, d_max, rng);
}

nlohmann::json group_summary(const GroupParams& g) {
  return {{"p_bits", bit_length(g.p)}, {"q_bits", bit_length(g.q)}, {"d_max", to_decimal(g.d_max)},
          {"record", g.to_record()}};
}

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  fs::create_directories(out);
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream(path) << j.dump(2) << '\n';
}

struct CompareArgs {
  std::string x, y;
  bool toy = false;
  unsigned bits = 1024;
  std::string d_max;
  std::string seed = "1";
  bool verify = false;
  std::string tamper;
  bool legacy = false;
  std::string out = "runs";
};

int cmd_compare(const CompareArgs& a) {
  const Clock clock;
  const bool paper = a.seed == "paper";
  const BigInt x = from_decimal(a.x);
  const BigInt y = from_decimal(a.y);
  const std::uint64_t seed = paper ? 0 : parse_seed(a.seed);

  SeededRandom seeded(seed);
  std::optional<ppc::WorkedExample> example;
  std::optional<ScriptedRandom> scripted;
  GroupParams group;
  KeyPair key_a, key_b;
  std::optional<BigInt> d_a, d_b;
  if (paper) {
    example = ppc::worked_example();
    scripted.emplace(example->script, &seeded);
    group = example->params;
    key_a = example->key_a;
    key_b = example->key_b;
    d_a = example->d_a;
    d_b = example->d_b;
  } else {
    if (a.toy) {
      group = toy_group();
      if (!a.d_max.empty()) group.d_max = from_decimal(a.d_max);
      validate_group(group);
    } else {
      const BigInt d_max = a.d_max.empty() ? default_d_max(a.bits) : from_decimal(a.d_max);
      group = group_for_bits(a.bits, d_max, seeded);
    }
    key_a = generate_keypair(group, seeded);
    key_b = generate_keypair(group, seeded);
  }
  RandomSource& rng = paper ? static_cast<RandomSource&>(*scripted) : seeded;

  net::Net net;
  if (!a.tamper.empty()) {
    std::ifstream in(a.tamper);
    if (!in) throw ParseError("cannot open '" + a.tamper + "'");
    for (auto& hook : net::parse_tamper_scenario(in, group.q)) net.add_hook(std::move(hook));
  }
  ppc::PpcProtocol protocol(group, key_a, key_b, {"N1", "N2", "N3", "N4"}, net, rng, a.seed);

  const std::string run_id =
      std::string(a.legacy ? "legacy" : "compare") + "_" + a.x + "_" + a.y + "_" + a.seed;
  const fs::path out = prepare_out(a.out);
  nlohmann::json report = {{"mode", a.legacy ? "legacy" : "compare"},
                           {"run_id", run_id},
                           {"seed", a.seed},
                           {"group", group_summary(group)}};
  int status = 0;

  if (a.legacy) {
    const ppc::LegacyTranscript t = protocol.run_legacy(x, y);
    std::ofstream tr(out / (run_id + ".transcript.jsonl"));
    net::export_log(tr, {{"kind", "legacy-transcript"}, {"seed", a.seed},
                         {"group", group.to_record()}}, t.log);
    report["outcome"] = std::string(ppc::to_string(t.outcome));
    report["coordinator_visible_sum"] = to_decimal(t.visible_sum);
    report["counts"] = {{"messages", t.log.size()}};
    std::cout << "outcome: " << ppc::to_string(t.outcome) << "\n"
              << "coordinator sees (x - y) mod q = " << t.visible_sum << "\n";
  } else {
    ppc::PpcTranscript t = protocol.run(x, y, d_a, d_b);
    if (a.verify) protocol.prove(t);
    std::ofstream tr(out / (run_id + ".transcript.jsonl"));
    t.export_jsonl(tr);

    report["outcome"] = std::string(ppc::to_string(t.outcome));
    report["X"] = to_decimal(t.x_sum);
    report["Y"] = to_decimal(t.y_sum);
    report["counts"] = {{"messages", t.comparison_messages},
                        {"zkp_messages", t.zkp_messages},
                        {"proofs", t.zkp ? 1 : 0}};
    std::cout << "outcome: " << ppc::to_string(t.outcome) << "\n"
              << "X = " << t.x_sum << ", Y = " << t.y_sum << "\n"
              << "messages: " << t.comparison_messages << "\n";
    if (t.zkp) {
      const bool ok = ppc::zkp_verify(*t.zkp, t.x_sum, t.y_sum, t.key_a, t.key_b, group);
      report["zkp"] = t.zkp->to_json();
      report["verified"] = ok;
      std::cout << "H1 = " << t.zkp->h1 << ", H2 = " << t.zkp->h2 << ", C = " << t.zkp->c << "\n"
                << "proof messages: " << t.zkp_messages << "\n"
                << "verification: " << (ok ? "accepted" : "REJECTED") << "\n";
      if (!ok) status = kExitFailedCheck;
    }
  }
  std::size_t tampered = 0;
  for (const auto& e : net.log()) tampered += e.tampered ? 1 : 0;
  report["tampered_messages"] = tampered;
  report["wall_seconds"] = clock.seconds();
  write_json(out / (run_id + ".report.json"), report);
  std::cout << "transcript: " << (out / (run_id + ".transcript.jsonl")).string() << "\n";
  return status;
}

struct AuctionArgs {
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> precision;
  std::optional<unsigned> bits;
  bool oracle_check = false;
  std::string out = "runs";
};

int cmd_auction(const AuctionArgs& a) {
  const Clock clock;
  const io::InstanceFile inst = io::load_instance(a.instance);
  const std::uint64_t seed = a.seed.value_or(inst.seed.value_or(1));
  const unsigned precision = a.precision.value_or(inst.precision.value_or(2));
  const unsigned bits = a.bits.value_or(inst.bits.value_or(256));

  SeededRandom rng(seed);
  const GroupParams group = group_for_bits(bits, default_d_max(bits), rng);
  auction::AuctionConfig config{group, inst.items, precision, {}, 0};
  auction::Auction au(config, rng);
  const auction::AuctionResult r = auction::run_auction(au, inst.agents);

  const std::string run_id = "auction_" + fs::path(a.instance).stem().string() + "_" +
                             std::to_string(seed);
  const fs::path out = prepare_out(a.out);
  {
    std::ofstream sbb(out / (run_id + ".sbb.jsonl"));
    au.board().export_jsonl(sbb);
  }
  write_json(out / (run_id + ".keys.json"), au.keys_document());

  nlohmann::json payments = nlohmann::json::object();
  for (const auto& [name, units] : r.payment_units) {
    payments[name] = format_units(units, precision);
  }
  nlohmann::json report = {{"mode", "auction"},
                           {"run_id", run_id},
                           {"seed", seed},
                           {"group", group_summary(group)},
                           {"order", r.order},
                           {"winners", r.winners},
                           {"payments", payments},
                           {"rejected", r.rejected},
                           {"counts",
                            {{"value_comparisons", r.value_comparisons},
                             {"item_comparisons", r.item_comparisons},
                             {"proofs", r.proofs},
                             {"sbb_records", au.board().size()}}}};

  std::cout << "winners:";
  for (const auto& w : r.winners) std::cout << ' ' << w;
  std::cout << "\n";
  for (const auto& w : r.winners) {
    std::cout << "  " << w << " pays " << format_units(r.payment_units.at(w), precision) << "\n";
  }
  for (const auto& name : r.rejected) std::cout << "rejected bid: " << name << "\n";
  std::cout << "comparisons: " << r.value_comparisons << " value, " << r.item_comparisons
            << " item; proofs: " << r.proofs << "\n";

  int status = 0;
  if (a.oracle_check) {
    std::vector<auction::AgentSpec> bidders;
    std::vector<BigInt> keys;
    for (const auto& spec : inst.agents) {
      if (std::find(r.rejected.begin(), r.rejected.end(), spec.name) != r.rejected.end()) continue;
      bidders.push_back(spec);
      keys.push_back(r.secret_ids.at(spec.name));
    }
    const oracle::Solution sol =
        oracle::icasm_solve(io::to_oracle(bidders, inst.items), keys, precision);
    bool same = sol.winners.size() == r.winners.size();
    for (std::size_t i = 0; same && i < sol.winners.size(); ++i) {
      const std::string& name = bidders[sol.winners[i]].name;
      same = name == r.winners[i] && sol.payment_units.at(sol.winners[i]) == r.payment_units.at(name);
    }
    report["oracle_check"] = same;
    std::cout << "oracle check: " << (same ? "match" : "MISMATCH") << "\n";
    if (!same) status = kExitFailedCheck;
  }
  report["wall_seconds"] = clock.seconds();
  write_json(out / (run_id + ".report.json"), report);
  std::cout << "board: " << (out / (run_id + ".sbb.jsonl")).string() << "\n";
  return status;
}

int cmd_verify(const std::string& sbb_path, const std::string& keys_path) {
  std::ifstream sbb(sbb_path);
  if (!sbb) throw ParseError("cannot open '" + sbb_path + "'");
  std::ifstream keys_in(keys_path);
  if (!keys_in) throw ParseError("cannot open '" + keys_path + "'");
  const auto keys = nlohmann::json::parse(keys_in, nullptr, false);
  if (keys.is_discarded()) throw ParseError("keys file is not JSON");

  const auction::VerifyReport rep = auction::verify_auction(sbb, keys);
  if (rep.ok) {
    std::cout << "verified\n";
    return 0;
  }
  std::cout << "FAILED";
  if (rep.index) std::cout << " at record " << *rep.index;
  std::cout << ": " << rep.reason << "\n";
  return kExitFailedCheck;
}

int cmd_analyze(unsigned s, unsigned m) {
  const Rational p = auction::topology_leak_probability(s, m);
  char decimal[64];
  std::snprintf(decimal, sizeof decimal, "%.12g", p.get_d());
  std::cout << "P = " << p.get_str() << " = " << decimal << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving comparisons and combinatorial auctions"};
  app.require_subcommand(1);

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare two integers held by different owners");
  compare->add_option("x", cmp.x, "First owner's integer")->required();
  compare->add_option("y", cmp.y, "Second owner's integer")->required();
  compare->add_flag("--toy-group", cmp.toy, "p = 1187, q = 593, g = 3, d_max = 5");
  compare->add_option("--bits", cmp.bits, "Size of p in bits (1024 uses the fixed Oakley group)");
  compare->add_option("--d-max", cmp.d_max, "Bound on the blinding multipliers");
  compare->add_option("--seed", cmp.seed, "Integer seed, or 'paper' for the worked toy example");
  compare->add_flag("--verify", cmp.verify, "Run and check the comparison proof");
  compare->add_option("--tamper", cmp.tamper, "Tamper scenario file");
  compare->add_flag("--legacy", cmp.legacy, "Run the unblinded baseline comparison");
  compare->add_option("--out", cmp.out, "Output directory");

  AuctionArgs auc;
  auto* auction = app.add_subcommand("auction", "Run a full auction from an instance file");
  auction->add_option("instance", auc.instance, "Instance YAML")->required();
  auction->add_option("--seed", auc.seed, "Overrides the instance seed");
  auction->add_option("--precision", auc.precision, "Decimal places of scaled bids");
  auction->add_option("--bits", auc.bits, "Size of p in bits");
  auction->add_flag("--oracle-check", auc.oracle_check, "Compare with the plaintext solver");
  auction->add_option("--out", auc.out, "Output directory");

  std::string sbb_path, keys_path;
  auto* verify = app.add_subcommand("verify", "Check a bulletin-board export");
  verify->add_option("sbb", sbb_path, "Board export (.sbb.jsonl)")->required();
  verify->add_option("keys", keys_path, "Keys file (.keys.json)")->required();

  unsigned s = 0, m = 0;
  auto* analyze = app.add_subcommand("analyze", "Chance of guessing a winner's bundle from its size");
  analyze->add_option("s", s, "Winner's bundle size")->required();
  analyze->add_option("m", m, "Number of items")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compare) {
      if (cmp.toy && compare->count("--bits")) {
        throw DomainError("--toy-group and --bits are exclusive");
      }
      if (!cmp.toy && cmp.seed != "paper" && cmp.bits == 0) throw DomainError("--bits must be positive");
      return cmd_compare(cmp);
    }
    if (*auction) return cmd_auction(auc);
    if (*verify) return cmd_verify(sbb_path, keys_path);
    if (*analyze) return cmd_analyze(s, m);
  } catch (const SetupError& e) {
    std::cerr << "setup error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
