#include "penmean/core_math.hpp"

#include <algorithm>
#include <cmath>

namespace penmean {

namespace {

void require_nonempty(IndicatorVector v) {
  if (v.empty()) throw EmptyVector();
}

// Entries must be finite; p <= 0 needs strictly positive entries, other
// p != 1 need nonnegative ones (real powers of negatives are undefined).
void require_domain(IndicatorVector v, Order p) {
  require_nonempty(v);
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("indicator value is not finite");
  }
  if (p.is_infinite() || p.is_one()) return;
  const bool strict = p.value() <= 0.0;
  for (double x : v) {
    if (strict ? !(x > 0.0) : x < 0.0) {
      throw DomainError("indicator value " + std::to_string(x) +
                        " outside the domain of the order " + p.label() + " mean");
    }
  }
}

void require_box_cox_order(Order p) {
  if (p.is_infinite()) throw UnsupportedOrder("Box-Cox transform undefined at order " + p.label());
}

// h_p of a ratio r >= 0 (any real r at p == 1), without the catastrophic
// cancellation of (r^p - 1)/p near p = 0.
double transform_ratio(double r, Order p) {
  if (p.is_zero()) return std::log(r);
  if (p.is_one()) return r - 1.0;
  const double q = p.value();
  return std::expm1(q * std::log(r)) / q;
}

double scaled_variance_about(IndicatorVector v, double mean, Order p) {
  if (mean == 0.0) throw DegenerateMean("power mean is zero; scaled indicators undefined");
  double acc = 0.0;
  for (double x : v) {
    const double t = transform_ratio(x / mean, p);
    acc += t * t;
  }
  return acc / static_cast<double>(v.size());
}

}  // namespace

double box_cox(double x, Order p) {
  require_box_cox_order(p);
  if (!std::isfinite(x)) throw DomainError("Box-Cox argument is not finite");
  if (p.is_one()) return x - 1.0;
  if (!(x > 0.0)) throw DomainError("Box-Cox argument must be positive for p != 1");
  if (p.is_zero()) return std::log(x);
  const double q = p.value();
  return std::expm1(q * std::log(x)) / q;
}

double box_cox_inv(double y, Order p) {
  require_box_cox_order(p);
  if (!std::isfinite(y)) throw DomainError("inverse Box-Cox argument is not finite");
  if (p.is_zero()) return std::exp(y);
  const double q = p.value();
  const double base = 1.0 + q * y;
  if (!(base > 0.0)) throw DomainError("inverse Box-Cox undefined: 1 + p*y <= 0");
  if (p.is_one()) return base;
  return std::exp(std::log1p(q * y) / q);
}

double power_mean(IndicatorVector v, Order p) {
  require_domain(v, p);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (p.kind() == Order::Kind::NegInf) return *lo;
  if (p.kind() == Order::Kind::PosInf) return *hi;

  const double m = static_cast<double>(v.size());
  if (p.is_one()) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / m;
  }
  if (p.is_zero()) {
    double acc = 0.0;
    for (double x : v) acc += std::log(x);
    return std::exp(acc / m);
  }

  const double q = p.value();
  const double ext = q > 0.0 ? *hi : *lo;
  if (ext == 0.0) return 0.0;  // all zeros, p > 0
  // M_p = ext * (1 + mean(expm1(q ln(x/ext))))^(1/q)
  double acc = 0.0;
  for (double x : v) acc += std::expm1(q * std::log(x / ext));
  return ext * std::exp(std::log1p(acc / m) / q);
}

double scaled_variance(IndicatorVector v, Order p) {
  require_box_cox_order(p);
  return scaled_variance_about(v, power_mean(v, p), p);
}

double penalty_factor(double svar, Order p, PenaltyDirection dir) {
  if (p.is_infinite()) return 1.0;
  const double s = sign_of(dir);
  if (p.is_zero()) return std::exp(s * svar);
  const double q = p.value();
  const double x = s * q * svar;
  if (!(1.0 + x > 0.0)) throw PenaltyDomainError(q, svar);
  if (p.is_one()) return 1.0 + x;
  return std::exp(std::log1p(x) / q);
}

double penalization_factor(IndicatorVector v, Order p, PenaltyDirection dir) {
  return scaled_stats(v, p, dir).factor;
}

ScaledStats scaled_stats(IndicatorVector v, Order p, PenaltyDirection dir) {
  ScaledStats out;
  out.mean = power_mean(v, p);
  if (p.is_infinite()) return out;
  out.scaled_variance = scaled_variance_about(v, out.mean, p);
  out.factor = penalty_factor(out.scaled_variance, p, dir);
  return out;
}

PenalizedMean penalized_power_mean(IndicatorVector v, Order p, PenaltyDirection dir) {
  PenalizedMean out;
  out.stats = scaled_stats(v, p, dir);
  out.value = out.stats.mean * out.stats.factor;
  return out;
}

double mpi(IndicatorVector v, PenaltyDirection dir) {
  require_domain(v, Order{});
  const double m = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / m;
  if (mean == 0.0) throw DegenerateMean("arithmetic mean is zero; MPI undefined");
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double variance = ss / m;
  return mean * (1.0 + sign_of(dir) * variance / (mean * mean));
}

double mrc(IndicatorVector v, std::size_t k, std::size_t h, Order p) {
  require_nonempty(v);
  if (k >= v.size() || h >= v.size()) throw IndexError("indicator index out of range");
  if (k == h) throw IndexError("marginal rate of compensation needs two distinct indicators");
  require_box_cox_order(p);
  if (p.is_one()) return 1.0;
  const double a = v[k];
  const double b = v[h];
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("marginal rate of compensation needs positive indicators");
  }
  if (p.is_zero()) return b / a;
  return std::pow(a / b, p.value() - 1.0);
}

}  // namespace penmean
