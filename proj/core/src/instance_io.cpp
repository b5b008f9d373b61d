#include "tpacas/instance_io.hpp"

#include <fstream>
#include <set>

#include <yaml-cpp/yaml.h>

#include "tpacas/errors.hpp"

namespace tpacas::io {
namespace {

std::size_t line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw ParseError(what + " must be a scalar", line_of(node));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(what + " has an invalid value '" + node.Scalar() + "'", line_of(node));
  }
}

BigInt big_scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw ParseError(what + " must be an integer", line_of(node));
  try {
    return from_decimal(node.Scalar());
  } catch (const ParseError&) {
    throw ParseError(what + " must be an integer, got '" + node.Scalar() + "'", line_of(node));
  }
}

}  // namespace

InstanceFile parse_instance(std::istream& in) {
  YAML::Node root;
  try {
    root = YAML::Load(in);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line) + 1);
  }
  if (!root.IsMap()) throw ParseError("instance must be a mapping", line_of(root));

  InstanceFile out;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "items" && key != "seed" && key != "precision" && key != "bits" &&
        key != "agents") {
      throw ParseError("unknown key '" + key + "'", line_of(kv.first));
    }
  }
  if (!root["items"]) throw ParseError("missing 'items'", 1);
  const int items = scalar<int>(root["items"], "items");
  if (items < 1) throw ParseError("items must be positive", line_of(root["items"]));
  out.items = static_cast<unsigned>(items);
  if (root["seed"]) out.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["precision"]) {
    const int p = scalar<int>(root["precision"], "precision");
    if (p < 0 || p > 30) throw ParseError("precision must be in 0..30", line_of(root["precision"]));
    out.precision = static_cast<unsigned>(p);
  }
  if (root["bits"]) {
    const int b = scalar<int>(root["bits"], "bits");
    if (b < 17) throw ParseError("bits must be at least 17", line_of(root["bits"]));
    out.bits = static_cast<unsigned>(b);
  }

  const YAML::Node agents = root["agents"];
  if (!agents) throw ParseError("missing 'agents'", 1);
  if (!agents.IsSequence()) throw ParseError("agents must be a list", line_of(agents));
  std::set<std::string> names;
  for (const auto& a : agents) {
    if (!a.IsMap()) throw ParseError("each agent must be a mapping", line_of(a));
    for (const char* key : {"name", "valuation", "bundle"}) {
      if (!a[key]) throw ParseError(std::string("agent lacks '") + key + "'", line_of(a));
    }
    auction::AgentSpec spec;
    spec.name = scalar<std::string>(a["name"], "name");
    if (!names.insert(spec.name).second) {
      throw ParseError("duplicate agent '" + spec.name + "'", line_of(a["name"]));
    }
    spec.valuation = big_scalar(a["valuation"], "valuation");
    if (spec.valuation < 1) {
      throw ParseError("valuation must be positive", line_of(a["valuation"]));
    }
    const YAML::Node bundle = a["bundle"];
    if (!bundle.IsSequence()) throw ParseError("bundle must be a list", line_of(bundle));
    for (const auto& item : bundle) {
      const int k = scalar<int>(item, "bundle item");
      if (k < 1 || k > items) {
        throw ParseError("bundle item " + std::to_string(k) + " outside 1.." +
                             std::to_string(items),
                         line_of(item));
      }
      spec.bundle.push_back(static_cast<unsigned>(k));
    }
    out.agents.push_back(std::move(spec));
  }
  return out;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const InstanceFile& instance) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "items" << YAML::Value << instance.items;
  if (instance.seed) e << YAML::Key << "seed" << YAML::Value << *instance.seed;
  if (instance.precision) e << YAML::Key << "precision" << YAML::Value << *instance.precision;
  if (instance.bits) e << YAML::Key << "bits" << YAML::Value << *instance.bits;
  e << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : instance.agents) {
    e << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << a.name;
    e << YAML::Key << "valuation" << YAML::Value << to_decimal(a.valuation);
    e << YAML::Key << "bundle" << YAML::Value << YAML::Flow << a.bundle;
    e << YAML::EndMap;
  }
  e << YAML::EndSeq << YAML::EndMap;
  out << e.c_str() << '\n';
}

oracle::Instance to_oracle(const std::vector<auction::AgentSpec>& agents, unsigned items) {
  oracle::Instance inst;
  inst.items = items;
  for (const auto& a : agents) {
    inst.bids.push_back({a.valuation, std::set<unsigned>(a.bundle.begin(), a.bundle.end())});
  }
  return inst;
}

std::vector<auction::AgentSpec> to_agents(const oracle::Instance& instance) {
  std::vector<auction::AgentSpec> out;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const auto& b = instance.bids[i];
    out.push_back({"a" + std::to_string(i + 1), b.valuation,
                   std::vector<unsigned>(b.bundle.begin(), b.bundle.end())});
  }
  return out;
}

}  // namespace tpacas::io
