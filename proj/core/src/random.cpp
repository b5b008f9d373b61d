#include "tpacas/random.hpp"

#include "tpacas/errors.hpp"

namespace tpacas {

BigInt SeededRandom::below(const BigInt& bound) {
  if (bound < 1) throw DomainError("sampling bound must be >= 1");
  if (bound == 1) return 0;

  const BigInt top = bound - 1;
  const std::size_t bits = bit_length(top);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;

  for (;;) {
    BigInt candidate = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t word = engine_();
      if (i == 0 && spare > 0) word >>= spare;
      candidate <<= 64;
      // mpz has no direct uint64 constructor on every platform.
      candidate += BigInt(static_cast<unsigned long>(word >> 32)) << 32;
      candidate += static_cast<unsigned long>(word & 0xffffffffULL);
    }
    if (candidate < bound) return candidate;
  }
}

ScriptedRandom::ScriptedRandom(std::vector<BigInt> script, RandomSource* fallback)
    : script_(script.begin(), script.end()), fallback_(fallback) {}

BigInt ScriptedRandom::below(const BigInt& bound) {
  if (bound < 1) throw DomainError("sampling bound must be >= 1");
  if (bound == 1) return 0;
  if (script_.empty()) {
    if (fallback_ == nullptr) throw ProtocolError("scripted random source exhausted");
    return fallback_->below(bound);
  }
  BigInt next = script_.front();
  script_.pop_front();
  if (next < 0 || next >= bound) {
    throw DomainError("scripted draw " + to_decimal(next) + " outside [0, " +
                      to_decimal(bound) + ")");
  }
  return next;
}

BigInt sample_scalar(const BigInt& range_max, RandomSource& rng) {
  if (range_max < 1) throw DomainError("sample_scalar: range_max must be >= 1");
  return rng.below(range_max);
}

}  // namespace tpacas
