#include "tpacas/collusion.hpp"

#include <map>
#include <string>

#include "tpacas/commitment.hpp"

namespace tpacas::ppc {
namespace {

class Facts {
 public:
  explicit Facts(const BigInt& q) : q_(q) {}

  bool has(const std::string& name) const { return values_.count(name) > 0; }
  const BigInt& get(const std::string& name) const { return values_.at(name); }

  // Records a value; returns true if it is new.
  bool learn(const std::string& name, const BigInt& value) {
    if (has(name)) return false;
    values_.emplace(name, mod(value, q_));
    return true;
  }

  bool has_all(std::initializer_list<const char*> names) const {
    for (const char* n : names) {
      if (!has(n)) return false;
    }
    return true;
  }

  // value / divisor, or nothing when the divisor is zero mod q.
  std::optional<BigInt> div(const BigInt& value, const BigInt& divisor) const {
    if (mod(divisor, q_) == 0) return std::nullopt;
    return mod(value * mod_inverse(divisor, q_), q_);
  }

 private:
  BigInt q_;
  std::map<std::string, BigInt> values_;
};

// c = a * b, with any two of the three determining the third.
bool product_rule(Facts& f, const std::string& c, const std::string& a, const std::string& b) {
  bool changed = false;
  if (!f.has(c) && f.has(a) && f.has(b)) changed |= f.learn(c, f.get(a) * f.get(b));
  if (!f.has(a) && f.has(c) && f.has(b)) {
    if (auto v = f.div(f.get(c), f.get(b))) changed |= f.learn(a, *v);
  }
  if (!f.has(b) && f.has(c) && f.has(a)) {
    if (auto v = f.div(f.get(c), f.get(a))) changed |= f.learn(b, *v);
  }
  return changed;
}

// c = a + b, with any two determining the third.
bool sum_rule(Facts& f, const std::string& c, const std::string& a, const std::string& b) {
  bool changed = false;
  if (!f.has(c) && f.has(a) && f.has(b)) changed |= f.learn(c, f.get(a) + f.get(b));
  if (!f.has(a) && f.has(c) && f.has(b)) changed |= f.learn(a, f.get(c) - f.get(b));
  if (!f.has(b) && f.has(c) && f.has(a)) changed |= f.learn(b, f.get(c) - f.get(a));
  return changed;
}

}  // namespace

ReconstructedOperands reconstruct_operands(const net::Knowledge& knowledge,
                                           const GroupParams& params,
                                           const BigInt& key_a, const BigInt& key_b,
                                           const BigInt& search_bound) {
  Facts f(params.q);
  std::map<std::string, BigInt> commitments;
  for (const auto& obs : knowledge.observations()) {
    if (obs.label.rfind("commit.", 0) == 0) {
      commitments.emplace(obs.label, obs.value);
    } else {
      f.learn(obs.label, obs.value);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    changed |= product_rule(f, "D", "mult.a", "mult.b");
    changed |= product_rule(f, "scaled.u", "mult.b", "val1");
    changed |= product_rule(f, "scaled.v", "mult.b", "val2");
    changed |= product_rule(f, "blinded.u", "D", "val1");
    changed |= product_rule(f, "blinded.v", "D", "val2");
    changed |= product_rule(f, "blinded.u", "mult.a", "scaled.u");
    changed |= product_rule(f, "blinded.v", "mult.a", "scaled.v");
    // val = share.a - share.b, i.e. share.a = val + share.b
    changed |= sum_rule(f, "share.a.u", "val1", "share.b.u");
    changed |= sum_rule(f, "share.a.v", "val2", "share.b.v");
    changed |= sum_rule(f, "x", "share.a.u", "share.a.v");
    changed |= sum_rule(f, "y", "share.b.u", "share.b.v");
    for (const char* side : {"a.u", "a.v", "b.u", "b.v"}) {
      const std::string s(side);
      const std::string own = s[0] == 'a' ? "mult.a" : "mult.b";
      changed |= product_rule(f, "mhelp." + s, own, "help." + s);
      changed |= product_rule(f, "Dhelp." + s, "D", "help." + s);
    }

    // Bounded search on commitments whose help value and sibling share are known.
    struct Probe {
      const char* commit;
      const char* help;
      const char* unknown;
      const char* sibling;
      const BigInt* key;
    };
    const Probe probes[] = {
        {"commit.a.u", "help.a.u", "share.a.u", "share.a.v", &key_a},
        {"commit.a.v", "help.a.v", "share.a.v", "share.a.u", &key_a},
        {"commit.b.u", "help.b.u", "share.b.u", "share.b.v", &key_b},
        {"commit.b.v", "help.b.v", "share.b.v", "share.b.u", &key_b},
    };
    for (const Probe& pr : probes) {
      if (f.has(pr.unknown) || !f.has(pr.help) || !f.has(pr.sibling)) continue;
      auto c = commitments.find(pr.commit);
      if (c == commitments.end()) continue;
      for (BigInt candidate = 0; candidate < search_bound; ++candidate) {
        const BigInt share = mod(candidate - f.get(pr.sibling), params.q);
        if (commit(share, f.get(pr.help), *pr.key, params).value == c->second) {
          changed |= f.learn(pr.unknown, share);
          break;
        }
      }
    }
  }

  ReconstructedOperands out;
  if (f.has("x")) out.x = f.get("x");
  if (f.has("y")) out.y = f.get("y");
  return out;
}

}  // namespace tpacas::ppc
