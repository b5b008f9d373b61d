#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "tpacas/bigint.hpp"

namespace tpacas {

/// Every random choice made by the library is drawn from one of these so a
/// run can be replayed from its seed.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform integer in [0, bound). `bound` must be >= 1.
  virtual BigInt below(const BigInt& bound) = 0;
};

/// mt19937_64 driven source. Sampling uses rejection over whole 64-bit words,
/// so sequences are identical on every conforming standard library.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  BigInt below(const BigInt& bound) override;

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed list of draws, then defers to `fallback` (if any).
/// Used to reproduce hand-worked protocol examples.
class ScriptedRandom final : public RandomSource {
 public:
  explicit ScriptedRandom(std::vector<BigInt> script,
                          RandomSource* fallback = nullptr);

  BigInt below(const BigInt& bound) override;

  std::size_t remaining() const noexcept { return script_.size(); }

 private:
  std::deque<BigInt> script_;
  RandomSource* fallback_;
};

/// Uniform integer in [0, range_max). Throws DomainError if range_max < 1.
BigInt sample_scalar(const BigInt& range_max, RandomSource& rng);

/// Fisher-Yates shuffle driven by `rng`.
template <typename T>
void shuffle(std::vector<T>& items, RandomSource& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = sample_scalar(BigInt(static_cast<unsigned long>(i)), rng)
                       .get_ui();
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace tpacas
