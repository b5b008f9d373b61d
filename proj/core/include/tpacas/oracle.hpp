#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tpacas/bigint.hpp"
#include "tpacas/random.hpp"

namespace tpacas::oracle {

struct Bid {
  BigInt valuation;
  std::set<unsigned> bundle;  // items numbered 1..m
};

struct Instance {
  unsigned items = 0;
  std::vector<Bid> bids;
};

/// Plaintext greedy result. Indices refer to `Instance::bids`.
struct Solution {
  std::vector<std::size_t> order;    // by scaled weight, ties by ascending key
  std::vector<std::size_t> winners;  // in `order` sequence
  std::map<std::size_t, BigInt> payment_units;
  std::map<std::size_t, std::optional<std::size_t>> critical;
  unsigned precision = 2;

  Rational payment(std::size_t bidder) const;
  BigInt welfare(const Instance& instance) const;
};

/// Greedy single-minded mechanism with critical-value payments at
/// fixed-point `precision`. `tie_keys` (one per bid, distinct) breaks equal
/// weights in ascending order; empty means bid order.
Solution icasm_solve(const Instance& instance, const std::vector<BigInt>& tie_keys = {},
                     unsigned precision = 2);

inline constexpr std::size_t kMaxExactBids = 20;

/// Best total valuation over conflict-free subsets of bids. Throws
/// DomainError beyond kMaxExactBids bids or 64 items.
BigInt optimal_welfare(const Instance& instance);

/// optimal_welfare / greedy welfare.
Rational approximation_ratio(const Instance& instance, const std::vector<BigInt>& tie_keys = {},
                             unsigned precision = 2);

/// n bids over m items; each bundle is uniform among subsets of size >= 2,
/// each valuation uniform on [min_value, max_value]. Needs m >= 2.
Instance generate_instance(std::size_t bidders, unsigned items, const BigInt& min_value,
                           const BigInt& max_value, RandomSource& rng);

}  // namespace tpacas::oracle
