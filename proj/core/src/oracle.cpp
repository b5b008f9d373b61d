#include "tpacas/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "tpacas/errors.hpp"
#include "tpacas/fixed_point.hpp"

namespace tpacas::oracle {
namespace {

bool intersects(const std::set<unsigned>& a, const std::set<unsigned>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

std::vector<BigInt> default_keys(const Instance& instance, const std::vector<BigInt>& keys) {
  if (keys.empty()) {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < instance.bids.size(); ++i) {
      out.emplace_back(static_cast<unsigned long>(i));
    }
    return out;
  }
  if (keys.size() != instance.bids.size()) {
    throw DomainError("one tie key per bid is required");
  }
  if (std::set<BigInt>(keys.begin(), keys.end()).size() != keys.size()) {
    throw DomainError("tie keys must be distinct");
  }
  return keys;
}

struct Branch {
  const std::vector<std::uint64_t>& masks;
  const std::vector<BigInt>& values;
  std::vector<BigInt> suffix;  // sum of values[i..]
  BigInt best = 0;

  void search(std::size_t i, std::uint64_t used, const BigInt& total) {
    if (total > best) best = total;
    if (i == masks.size() || total + suffix[i] <= best) return;
    if ((masks[i] & used) == 0) search(i + 1, used | masks[i], total + values[i]);
    search(i + 1, used, total);
  }
};

}  // namespace

Rational Solution::payment(std::size_t bidder) const {
  auto it = payment_units.find(bidder);
  if (it == payment_units.end()) return 0;
  return units_to_rational(it->second, precision);
}

BigInt Solution::welfare(const Instance& instance) const {
  BigInt total = 0;
  for (std::size_t w : winners) total += instance.bids.at(w).valuation;
  return total;
}

Solution icasm_solve(const Instance& instance, const std::vector<BigInt>& tie_keys,
                     unsigned precision) {
  const std::vector<BigInt> keys = default_keys(instance, tie_keys);
  const std::size_t n = instance.bids.size();
  std::vector<BigInt> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Bid& b = instance.bids[i];
    weight[i] = scaled_weight(b.valuation, static_cast<unsigned>(b.bundle.size()), precision);
  }

  Solution sol;
  sol.precision = precision;
  sol.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.order[i] = i;
  std::sort(sol.order.begin(), sol.order.end(), [&](std::size_t a, std::size_t b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return keys[a] < keys[b];
  });

  std::set<unsigned> taken;
  for (std::size_t i : sol.order) {
    const auto& bundle = instance.bids[i].bundle;
    if (!intersects(bundle, taken)) {
      sol.winners.push_back(i);
      taken.insert(bundle.begin(), bundle.end());
    }
  }

  for (std::size_t i : sol.winners) {
    const auto& mine = instance.bids[i].bundle;
    std::set<unsigned> without_me;
    std::optional<std::size_t> critical;
    for (std::size_t k : sol.order) {
      if (k == i) continue;
      const auto& theirs = instance.bids[k].bundle;
      if (intersects(theirs, without_me)) continue;
      if (intersects(theirs, mine)) {
        critical = k;
        break;
      }
      without_me.insert(theirs.begin(), theirs.end());
    }
    sol.critical[i] = critical;
    if (!critical) {
      sol.payment_units[i] = 0;
      continue;
    }
    const BigInt threshold = weight[*critical] + (keys[i] > keys[*critical] ? 1 : 0);
    sol.payment_units[i] =
        threshold_payment_units(threshold, static_cast<unsigned>(mine.size()));
  }
  return sol;
}

BigInt optimal_welfare(const Instance& instance) {
  if (instance.bids.size() > kMaxExactBids) {
    throw DomainError("optimal_welfare supports at most " + std::to_string(kMaxExactBids) +
                      " bids");
  }
  std::vector<std::uint64_t> masks;
  std::vector<BigInt> values;
  for (const Bid& b : instance.bids) {
    std::uint64_t mask = 0;
    for (unsigned item : b.bundle) {
      if (item == 0 || item > 64) throw DomainError("optimal_welfare supports items 1..64");
      mask |= std::uint64_t{1} << (item - 1);
    }
    masks.push_back(mask);
    values.push_back(b.valuation);
  }
  Branch br{masks, values, std::vector<BigInt>(masks.size() + 1, 0)};
  for (std::size_t i = masks.size(); i-- > 0;) br.suffix[i] = br.suffix[i + 1] + values[i];
  br.search(0, 0, 0);
  return br.best;
}

Rational approximation_ratio(const Instance& instance, const std::vector<BigInt>& tie_keys,
                             unsigned precision) {
  const BigInt greedy = icasm_solve(instance, tie_keys, precision).welfare(instance);
  if (greedy == 0) throw DomainError("greedy welfare is zero");
  Rational r(optimal_welfare(instance), greedy);
  r.canonicalize();
  return r;
}

Instance generate_instance(std::size_t bidders, unsigned items, const BigInt& min_value,
                           const BigInt& max_value, RandomSource& rng) {
  if (items < 2) throw DomainError("need at least two items");
  if (min_value < 1 || max_value < min_value) throw DomainError("bad valuation range");
  Instance inst;
  inst.items = items;
  BigInt subsets;
  mpz_ui_pow_ui(subsets.get_mpz_t(), 2, items);
  for (std::size_t b = 0; b < bidders; ++b) {
    Bid bid;
    bid.valuation = min_value + sample_scalar(max_value - min_value + 1, rng);
    for (;;) {
      const BigInt mask = sample_scalar(subsets, rng);
      if (mpz_popcount(mask.get_mpz_t()) < 2) continue;
      for (unsigned i = 0; i < items; ++i) {
        if (mpz_tstbit(mask.get_mpz_t(), i)) bid.bundle.insert(i + 1);
      }
      break;
    }
    inst.bids.push_back(std::move(bid));
  }
  return inst;
}

}  // namespace tpacas::oracle
