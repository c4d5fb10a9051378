#pragma once

// Independent numerical checks of the closed forms in core_math: the
// variational characterization of the power mean, and finite-difference
// probes of derivatives with respect to the order and the indicators.
//
// Derivatives come in three flavours so each can be checked against the
// others:
//   fd_*       central finite differences of the core_math functions
//   *_reduced  closed forms that assume the residual sum
//              sum_j (r_j^p - 1) * d(r_j^p) vanishes
//   *_exact    closed forms that keep that term

#include <cstddef>

#include "penmean/core_math.hpp"

namespace penmean {

struct LossReport {
  double argmin = 0.0;                // minimizer c* found by search
  double loss_at_argmin = 0.0;        // F_p(c*)
  double transformed_mean = 0.0;      // h_p(M_p)
  double transformed_variance = 0.0;  // biased variance of h_p(v)
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Information loss F_p(c) = (1/m) sum (h_p(v_j) - h_p(c))^2.
double loss(double c, IndicatorVector v, Order p);

/// Biased sample variance of h_p(v).
double transformed_variance(IndicatorVector v, Order p);

/// [max(1e-6, min/2), 2*max]; contains every power mean of v.
Bracket default_bracket(IndicatorVector v);

/// Minimizes F_p over the bracket with golden-section search in
/// t = h_p(c), then takes one three-point parabolic vertex step. Uses only
/// loss evaluations. Throws BracketError unless lo <= min v and hi >= max v
/// (and lo > 0 for p != 1).
LossReport minimize_loss(IndicatorVector v, Order p, Bracket bracket);
LossReport minimize_loss(IndicatorVector v, Order p);

/// Central difference of the penalized mean in indicator k, relative step 1e-6.
double fd_partial_pm(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir);

/// Central difference of the penalization factor in p, step 1e-5. |p| >= 0.1.
double fd_partial_g_in_p(IndicatorVector v, Order p, PenaltyDirection dir);

/// Central difference of the scaled variance in p, step 1e-5. |p| >= 0.1.
double fd_partial_svar_in_p(IndicatorVector v, Order p);

/// -(2/p) S~^2_p.
double dsvar_dp_reduced(IndicatorVector v, Order p);
/// g [-(1/p^2) ln(1 +/- p S~^2) -/+ (1/p) S~^2 / (1 +/- p S~^2)].
double dg_dp_reduced(IndicatorVector v, Order p, PenaltyDirection dir);
/// (1/m) p v_k^(p-1) g, or (1/m) g / v_k at p = 0.
double dpm_di_reduced(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir);

double dsvar_dp_exact(IndicatorVector v, Order p);
double dg_dp_exact(IndicatorVector v, Order p, PenaltyDirection dir);
double dpm_di_exact(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir);

/// Ratio of exact partials of the penalized mean, d/dv_k over d/dv_h.
double mrc_exact(IndicatorVector v, std::size_t k, std::size_t h, Order p, PenaltyDirection dir);

/// Literal reading of the pairwise rank conditions for two units with
/// M_k > M_h: for p != 0 the comparison of M^p differences against
/// p (M^p S~^2) differences; for p = 0 the exp-ratio test. Returns whether
/// the condition claims PM_k > PM_h.
bool rank_condition(const ScaledStats& k, const ScaledStats& h, Order p, PenaltyDirection dir);

}  // namespace penmean
