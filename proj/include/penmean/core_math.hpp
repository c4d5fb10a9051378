#pragma once

// Closed-form evaluation of power means, the Box-Cox transform, the scaled
// heterogeneity variance and the penalized power mean built from them.
//
// Every function here is pure; vectors are borrowed as spans.

#include <cstddef>
#include <span>

#include "penmean/errors.hpp"
#include "penmean/order.hpp"

namespace penmean {

/// Normalized indicators of one unit.
using IndicatorVector = std::span<const double>;

/// Sign of the penalty. Minus rewards balance (positive polarity phenomena),
/// Plus is used for negative polarity.
enum class PenaltyDirection { Minus, Plus };

constexpr double sign_of(PenaltyDirection dir) noexcept {
  return dir == PenaltyDirection::Minus ? -1.0 : 1.0;
}

struct ScaledStats {
  double mean = 0.0;             // M_p
  double scaled_variance = 0.0;  // variance of h_p(v / M_p)
  double factor = 1.0;           // (1 +/- p S~^2)^(1/p), exp(+/-S~^2) at p = 0
};

struct PenalizedMean {
  ScaledStats stats;
  double value = 0.0;  // stats.mean * stats.factor
};

/// (x^p - 1)/p, or ln x at p = 0. x must be positive unless p == 1.
double box_cox(double x, Order p);

/// Inverse of box_cox. Requires 1 + p*y > 0 for p != 0.
double box_cox_inv(double y, Order p);

/// Power mean of order p, with min/max at -inf/+inf.
///
/// Entries must be strictly positive for p <= 0 and nonnegative for other
/// p != 1; p == 1 accepts any finite values. Evaluation factors out the
/// extreme entry so large |p| neither overflows nor underflows.
double power_mean(IndicatorVector v, Order p);

/// (1/m) sum h_p(v_j / M_p)^2. Scale invariant; zero iff all entries match.
double scaled_variance(IndicatorVector v, Order p);

/// Penalty factor for a known scaled variance. Throws PenaltyDomainError
/// when 1 +/- p*svar <= 0. Returns 1 for infinite orders.
double penalty_factor(double svar, Order p, PenaltyDirection dir);

double penalization_factor(IndicatorVector v, Order p, PenaltyDirection dir);

ScaledStats scaled_stats(IndicatorVector v, Order p, PenaltyDirection dir);

/// M_p * g_p. At +/-inf the penalty vanishes and the result is the max/min.
PenalizedMean penalized_power_mean(IndicatorVector v, Order p, PenaltyDirection dir);

/// M_1 (1 +/- S^2/M_1^2) from the raw biased variance.
double mpi(IndicatorVector v, PenaltyDirection dir);

/// Marginal rate of compensation between indicators k and h (0-based):
/// (v_k / v_h)^(p-1), or v_h / v_k at p = 0. Exactly 1 at p = 1.
double mrc(IndicatorVector v, std::size_t k, std::size_t h, Order p);

}  // namespace penmean
