#pragma once

// Sort, greedy allocation and critical-bidder search over opaque agent
// indices. The auction drives these with live comparisons, the verifier with
// outcomes read back from the board, so both walk the same comparison set.

#include <cstddef>
#include <optional>
#include <vector>

namespace tpacas::detail {

/// Top-down merge sort of 0..n-1. `precedes(a, b)` must be a strict total
/// order; it is called with the left run's head as `a`.
template <typename Precedes>
std::vector<std::size_t> merge_sort_order(std::size_t n, Precedes&& precedes) {
  std::vector<std::size_t> items(n);
  for (std::size_t i = 0; i < n; ++i) items[i] = i;
  std::vector<std::size_t> scratch(n);
  auto sort = [&](auto& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo < 2) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
      scratch[k++] = precedes(items[i], items[j]) ? items[i++] : items[j++];
    }
    while (i < mid) scratch[k++] = items[i++];
    while (j < hi) scratch[k++] = items[j++];
    for (std::size_t t = lo; t < hi; ++t) items[t] = scratch[t];
  };
  sort(sort, 0, n);
  return items;
}

/// Agents of `order` admitted greedily; `conflict(a, b)` for a later `a`
/// against an admitted `b`.
template <typename Conflict>
std::vector<std::size_t> greedy_winners(const std::vector<std::size_t>& order,
                                        Conflict&& conflict) {
  std::vector<std::size_t> admitted;
  for (std::size_t a : order) {
    bool clash = false;
    for (std::size_t b : admitted) {
      if (conflict(a, b)) {
        clash = true;
        break;
      }
    }
    if (!clash) admitted.push_back(a);
  }
  return admitted;
}

/// First agent admitted by the greedy pass without `winner` whose bundle
/// meets the winner's.
template <typename Conflict>
std::optional<std::size_t> critical_agent(const std::vector<std::size_t>& order,
                                          std::size_t winner, Conflict&& conflict) {
  std::vector<std::size_t> admitted;
  for (std::size_t a : order) {
    if (a == winner) continue;
    bool clash = false;
    for (std::size_t b : admitted) {
      if (conflict(a, b)) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    if (conflict(a, winner)) return a;
    admitted.push_back(a);
  }
  return std::nullopt;
}

}  // namespace tpacas::detail
