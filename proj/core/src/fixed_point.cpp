#include "tpacas/fixed_point.hpp"

#include "tpacas/errors.hpp"

namespace tpacas {

BigInt decimal_scale(unsigned precision) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, precision);
  return out;
}

BigInt scaled_weight(const BigInt& valuation, unsigned size, unsigned precision) {
  if (size == 0) throw DomainError("bundle size must be positive");
  if (sgn(valuation) < 0) throw DomainError("valuation must be non-negative");
  const BigInt scale = decimal_scale(precision);
  // floor(sqrt(floor(z))) == floor(sqrt(z)) for z >= 0.
  const BigInt squared = scale * scale * valuation * valuation / size;
  return isqrt(squared);
}

BigInt threshold_payment_units(const BigInt& threshold, unsigned size) {
  if (sgn(threshold) < 0) throw DomainError("threshold must be non-negative");
  return isqrt_ceil(threshold * threshold * size);
}

std::string format_units(const BigInt& units, unsigned precision) {
  const bool negative = sgn(units) < 0;
  std::string digits = to_decimal(negative ? BigInt(-units) : units);
  if (digits.size() <= precision) digits.insert(0, precision + 1 - digits.size(), '0');
  if (precision > 0) digits.insert(digits.size() - precision, ".");
  return negative ? "-" + digits : digits;
}

Rational units_to_rational(const BigInt& units, unsigned precision) {
  Rational r(units, decimal_scale(precision));
  r.canonicalize();
  return r;
}

}  // namespace tpacas
