#include "tpacas/bigint.hpp"

#include "tpacas/errors.hpp"

namespace tpacas {

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

BigInt from_decimal(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw ParseError("empty integer");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw ParseError("not a decimal integer: '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigInt mod(const BigInt& value, const BigInt& modulus) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& value, const BigInt& modulus) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw DomainError("no modular inverse of " + to_decimal(value) + " mod " +
                      to_decimal(modulus));
  }
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("square root of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt isqrt_ceil(const BigInt& n) {
  BigInt r = isqrt(n);
  if (r * r < n) ++r;
  return r;
}

std::size_t bit_length(const BigInt& value) {
  if (sgn(value) == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

}  // namespace tpacas
