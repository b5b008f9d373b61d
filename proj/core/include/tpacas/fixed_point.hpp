#pragma once

#include <string>

#include "tpacas/bigint.hpp"

namespace tpacas {

/// 10^precision.
BigInt decimal_scale(unsigned precision);

/// floor(10^precision * valuation / sqrt(size)). Throws DomainError for
/// size == 0 or a negative valuation.
BigInt scaled_weight(const BigInt& valuation, unsigned size, unsigned precision);

/// Smallest payment, in units of 10^-precision, with which a bidder of
/// bundle size `size` reaches a scaled weight of at least `threshold`:
/// ceil(threshold * sqrt(size)).
BigInt threshold_payment_units(const BigInt& threshold, unsigned size);

/// Units of 10^-precision rendered as a decimal string, e.g. 800 -> "8.00".
std::string format_units(const BigInt& units, unsigned precision);

Rational units_to_rational(const BigInt& units, unsigned precision);

}  // namespace tpacas
