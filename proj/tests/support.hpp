#pragma once

// Test-side helpers. Nothing here calls into the library's arithmetic, so the
// values it produces can serve as independent expectations.

#include <cstdint>
#include <set>

inline std::uint64_t naive_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>((unsigned __int128)result * base % mod);
    base = static_cast<std::uint64_t>((unsigned __int128)base * base % mod);
    exp >>= 1;
  }
  return result;
}

// The order-q subgroup of Z*_p for a safe prime p, listed by brute force.
inline std::set<std::uint64_t> naive_subgroup(std::uint64_t p, std::uint64_t g) {
  std::set<std::uint64_t> out;
  std::uint64_t x = 1;
  do {
    out.insert(x);
    x = x * g % p;
  } while (x != 1);
  return out;
}

inline int naive_sign(long long a, long long b) { return (a > b) - (a < b); }
