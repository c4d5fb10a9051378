#include "penmean/verification.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace penmean {

namespace {

constexpr double kIndicatorRelStep = 1e-6;
constexpr double kOrderStep = 1e-5;
constexpr double kMinProbeOrder = 0.1;

void require_search_order(Order p) {
  if (p.is_infinite()) throw UnsupportedOrder("no loss function at order " + p.label());
}

void require_probe_order(Order p) {
  if (p.is_infinite()) throw UnsupportedOrder("derivative probe undefined at order " + p.label());
  if (std::abs(p.value()) < kMinProbeOrder) {
    throw DomainError("derivative in p is probed only for |p| >= 0.1");
  }
}

std::vector<double> transformed(IndicatorVector v, Order p) {
  if (v.empty()) throw EmptyVector();
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(box_cox(x, p));
  return out;
}

double mean_square_about(const std::vector<double>& t, double centre) {
  double acc = 0.0;
  for (double x : t) acc += (x - centre) * (x - centre);
  return acc / static_cast<double>(t.size());
}

// Terms shared by the exact derivatives at p != 0: ratios r_j = v_j / M_p
// and u_j = r_j^p, which average to one.
struct Scaled {
  double mean;
  std::vector<double> r;
  std::vector<double> u;
};

Scaled scaled(IndicatorVector v, Order p) {
  Scaled s{power_mean(v, p), {}, {}};
  if (s.mean == 0.0) throw DegenerateMean("power mean is zero");
  for (double x : v) {
    const double r = x / s.mean;
    s.r.push_back(r);
    s.u.push_back(p.is_one() ? r : std::pow(r, p.value()));
  }
  return s;
}

}  // namespace

double loss(double c, IndicatorVector v, Order p) {
  require_search_order(p);
  const double hc = box_cox(c, p);
  const auto t = transformed(v, p);
  return mean_square_about(t, hc);
}

double transformed_variance(IndicatorVector v, Order p) {
  require_search_order(p);
  const auto t = transformed(v, p);
  double mean = 0.0;
  for (double x : t) mean += x;
  mean /= static_cast<double>(t.size());
  return mean_square_about(t, mean);
}

Bracket default_bracket(IndicatorVector v) {
  if (v.empty()) throw EmptyVector();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {std::max(1e-6, 0.5 * *lo), 2.0 * *hi};
}

LossReport minimize_loss(IndicatorVector v, Order p) {
  return minimize_loss(v, p, default_bracket(v));
}

LossReport minimize_loss(IndicatorVector v, Order p, Bracket bracket) {
  require_search_order(p);
  if (v.empty()) throw EmptyVector();
  const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
  if (!(bracket.lo < bracket.hi) || bracket.lo > *vmin || bracket.hi < *vmax) {
    throw BracketError("bracket must contain [min v, max v]");
  }
  if (!p.is_one() && !(bracket.lo > 0.0)) {
    throw BracketError("bracket lower end must be positive for p != 1");
  }

  const auto hv = transformed(v, p);
  const auto objective = [&hv](double t) { return mean_square_about(hv, t); };

  // F_p is a parabola in t = h_p(c); h_p is increasing so the bracket maps
  // to [h(lo), h(hi)].
  double a = box_cox(bracket.lo, p);
  double b = box_cox(bracket.hi, p);
  const double width0 = b - a;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 300 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b) + 1e-300);
       ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double t = 0.5 * (a + b);

  // Value comparisons stall at ~sqrt(eps) in t. The vertex of the parabola
  // through three well separated samples is accurate to ~eps.
  const double s = 1e-3 * width0;
  const double fm = objective(t - s);
  const double f0 = objective(t);
  const double fp = objective(t + s);
  const double curvature = fp - 2.0 * f0 + fm;
  if (curvature > 0.0) t -= s * (fp - fm) / (2.0 * curvature);

  LossReport report;
  report.argmin = box_cox_inv(t, p);
  report.loss_at_argmin = loss(report.argmin, v, p);
  report.transformed_mean = box_cox(power_mean(v, p), p);
  report.transformed_variance = transformed_variance(v, p);
  return report;
}

double fd_partial_pm(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir) {
  if (k >= v.size()) throw IndexError("indicator index out of range");
  if (p.is_infinite()) throw UnsupportedOrder("derivative probe undefined at order " + p.label());
  std::vector<double> w(v.begin(), v.end());
  const double x = w[k];
  const double step = kIndicatorRelStep * (x != 0.0 ? std::abs(x) : 1.0);
  if (!p.is_one() && (p.value() <= 0.0 ? x - step <= 0.0 : x - step < 0.0)) {
    throw DomainError("perturbed indicator leaves the domain of the mean");
  }
  w[k] = x + step;
  const double up = penalized_power_mean(w, p, dir).value;
  w[k] = x - step;
  const double down = penalized_power_mean(w, p, dir).value;
  return (up - down) / (2.0 * step);
}

double fd_partial_g_in_p(IndicatorVector v, Order p, PenaltyDirection dir) {
  require_probe_order(p);
  const double q = p.value();
  const double up = penalization_factor(v, Order::of(q + kOrderStep), dir);
  const double down = penalization_factor(v, Order::of(q - kOrderStep), dir);
  return (up - down) / (2.0 * kOrderStep);
}

double fd_partial_svar_in_p(IndicatorVector v, Order p) {
  require_probe_order(p);
  const double q = p.value();
  const double up = scaled_variance(v, Order::of(q + kOrderStep));
  const double down = scaled_variance(v, Order::of(q - kOrderStep));
  return (up - down) / (2.0 * kOrderStep);
}

double dsvar_dp_reduced(IndicatorVector v, Order p) {
  require_probe_order(p);
  return -2.0 / p.value() * scaled_variance(v, p);
}

double dg_dp_reduced(IndicatorVector v, Order p, PenaltyDirection dir) {
  require_probe_order(p);
  const auto st = scaled_stats(v, p, dir);
  const double q = p.value();
  const double s = sign_of(dir);
  const double base = 1.0 + s * q * st.scaled_variance;
  return st.factor *
         (-std::log(base) / (q * q) - s * st.scaled_variance / (q * base));
}

double dpm_di_reduced(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir) {
  if (k >= v.size()) throw IndexError("indicator index out of range");
  if (p.is_infinite()) throw UnsupportedOrder("derivative undefined at order " + p.label());
  const double g = penalization_factor(v, p, dir);
  const double m = static_cast<double>(v.size());
  if (p.is_zero()) return g / (m * v[k]);
  const double q = p.value();
  return q * std::pow(v[k], q - 1.0) * g / m;
}

double dsvar_dp_exact(IndicatorVector v, Order p) {
  require_probe_order(p);
  const double q = p.value();
  const auto s = scaled(v, p);
  const double m = static_cast<double>(v.size());
  // u_j ln r_j -> 0 for a zero entry.
  const auto u_log_r = [&](std::size_t j) {
    return s.u[j] == 0.0 ? 0.0 : s.u[j] * std::log(s.r[j]);
  };
  double weighted_log = 0.0;  // p * d ln M_p / dp
  for (std::size_t j = 0; j < v.size(); ++j) weighted_log += u_log_r(j);
  weighted_log /= m;

  double svar = 0.0;
  double cross = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double e = s.u[j] - 1.0;
    svar += e * e;
    cross += e * (u_log_r(j) - s.u[j] * weighted_log);
  }
  svar /= q * q * m;
  return -2.0 / q * svar + 2.0 / (q * q * m) * cross;
}

double dg_dp_exact(IndicatorVector v, Order p, PenaltyDirection dir) {
  require_probe_order(p);
  const auto st = scaled_stats(v, p, dir);
  const double q = p.value();
  const double sg = sign_of(dir);
  const double base = 1.0 + sg * q * st.scaled_variance;
  const double dsvar = dsvar_dp_exact(v, p);
  const double dlog_g =
      -std::log(base) / (q * q) + sg * (st.scaled_variance + q * dsvar) / (q * base);
  return st.factor * dlog_g;
}

double dpm_di_exact(IndicatorVector v, std::size_t k, Order p, PenaltyDirection dir) {
  if (k >= v.size()) throw IndexError("indicator index out of range");
  if (p.is_infinite()) throw UnsupportedOrder("derivative undefined at order " + p.label());
  const auto st = scaled_stats(v, p, dir);
  const double m = static_cast<double>(v.size());
  const double sg = sign_of(dir);

  if (p.is_zero()) {
    const double log_rk = std::log(v[k] / st.mean);
    const double dmean = st.mean / (m * v[k]);
    const double dsvar = 2.0 * log_rk / (m * v[k]);
    return dmean * st.factor + st.mean * sg * st.factor * dsvar;
  }

  const double q = p.value();
  const auto s = scaled(v, p);
  double weighted = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) weighted += (s.u[j] - 1.0) * s.u[j];
  weighted /= m;
  const double rk_pow = p.is_one() ? 1.0 : std::pow(s.r[k], q - 1.0);
  const double dmean = rk_pow / m;
  const double dsvar = 2.0 * rk_pow / (q * m * st.mean) * ((s.u[k] - 1.0) - weighted);
  const double base = 1.0 + sg * q * st.scaled_variance;
  const double dfactor = st.factor * sg * dsvar / base;
  return dmean * st.factor + st.mean * dfactor;
}

double mrc_exact(IndicatorVector v, std::size_t k, std::size_t h, Order p,
                 PenaltyDirection dir) {
  if (k == h) throw IndexError("marginal rate of compensation needs two distinct indicators");
  return dpm_di_exact(v, k, p, dir) / dpm_di_exact(v, h, p, dir);
}

bool rank_condition(const ScaledStats& k, const ScaledStats& h, Order p, PenaltyDirection dir) {
  if (p.is_infinite()) throw UnsupportedOrder("rank condition undefined at order " + p.label());
  const bool minus = dir == PenaltyDirection::Minus;
  if (p.is_zero()) {
    const double diff = minus ? k.scaled_variance - h.scaled_variance
                              : h.scaled_variance - k.scaled_variance;
    return k.mean / h.mean > std::exp(diff);
  }
  const double q = p.value();
  const double mk = std::pow(k.mean, q);
  const double mh = std::pow(h.mean, q);
  const double rhs = minus ? q * (mk * k.scaled_variance - mh * h.scaled_variance)
                           : q * (mh * h.scaled_variance - mk * k.scaled_variance);
  return mk - mh > rhs;
}

}  // namespace penmean
