#include "penmean/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "penmean/csv_io.hpp"
#include "penmean/verification.hpp"

namespace penmean {

std::vector<Order> default_verify_orders() {
  return {Order::of(-2), Order::of(-1), Order::of(-0.5), Order::zero(),
          Order::of(0.5), Order::of(1),  Order::of(2),    Order::of(3)};
}

void CheckResult::record(double residual, bool ok) {
  ++evaluated;
  if (!ok) {
    ++failures;
    pass = false;
  }
  if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
  worst_residual = std::max(worst_residual, residual);
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.pass; });
}

std::string VerifyReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["all_pass"] = all_pass();
  doc["checks"] = ordered_json::object();
  for (const auto& [name, c] : checks) {
    ordered_json entry;
    entry["status"] = c.pass ? "pass" : "fail";
    entry["worst_residual"] = std::isfinite(c.worst_residual) ? ordered_json(c.worst_residual)
                                                               : ordered_json("inf");
    entry["tolerance"] = c.tolerance;
    entry["evaluated"] = c.evaluated;
    entry["failures"] = c.failures;
    doc["checks"][name] = std::move(entry);
  }
  doc["flags"] = ordered_json::array();
  for (const auto& f : flags) {
    doc["flags"].push_back({{"unit_id", f.unit_id}, {"p", f.order.label()}, {"reason", to_string(f.flag)}});
  }
  return doc.dump(2) + "\n";
}

namespace {

constexpr PenaltyDirection kBoth[] = {PenaltyDirection::Minus, PenaltyDirection::Plus};

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Runs fn and reports whether it threw a penalty/degeneracy error.
template <class Fn>
bool evaluable(Fn&& fn) {
  try {
    fn();
    return true;
  } catch (const PenaltyDomainError&) {
  } catch (const DegenerateMean&) {
  } catch (const DomainError&) {
  }
  return false;
}

CheckResult& check(VerifyReport& r, const std::string& name, double tol) {
  auto& c = r.checks[name];
  c.tolerance = tol;
  return c;
}

}  // namespace

VerifyReport verify_dataset(const NormalizedMatrix& data, const std::vector<Order>& orders,
                            PenaltyDirection dir) {
  VerifyReport report;
  auto& minimizer = check(report, "minimizer_identity", 1e-7);
  auto& optimum = check(report, "loss_at_optimum", 1e-12);
  auto& sandwich = check(report, "sandwich", 0.0);
  auto& equality = check(report, "equality", 0.0);
  auto& power_id = check(report, "power_identity", 1e-10);
  auto& geo_id = check(report, "geometric_identity", 1e-12);
  auto& limits = check(report, "extreme_limits", 0.02);
  auto& g_sign = check(report, "factor_derivative_sign", 0.0);
  auto& g_zero = check(report, "factor_zero_limit", 1e-3);
  auto& g_inf = check(report, "factor_infinity_limit", 0.05);
  auto& mrc_check = check(report, "mrc", 1e-5);
  auto& grad_exact = check(report, "gradient_exact_vs_fd", 1e-5);

  for (std::size_t i = 0; i < data.units(); ++i) {
    const auto v = data.row(i);
    const auto& id = data.unit_ids[i];
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const bool flat = *lo == *hi;

    for (const Order p : orders) {
      const auto cell = score_cell(v, id, p, dir);
      if (cell.flag != ScoreFlag::None) report.flags.push_back({id, p, cell.flag});
      if (p.is_infinite()) {
        const double ext = p.kind() == Order::Kind::PosInf ? *hi : *lo;
        for (auto d : kBoth) {
          const double pm = penalized_power_mean(v, p, d).value;
          limits.record(std::abs(pm - ext), pm == ext);
        }
        continue;
      }

      evaluable([&] {
        const double mp = power_mean(v, p);
        const auto rep = minimize_loss(v, p);
        const double err = std::abs(rep.argmin - mp);
        minimizer.record(err, err <= 1e-7);
        const double opt = std::abs(loss(mp, v, p) - rep.transformed_variance) /
                           std::max(1.0, rep.transformed_variance);
        optimum.record(opt, opt <= 1e-12);
      });

      evaluable([&] {
        const auto minus = penalized_power_mean(v, p, PenaltyDirection::Minus);
        const auto plus = penalized_power_mean(v, p, PenaltyDirection::Plus);
        const double m = minus.stats.mean;
        const double viol = std::max({0.0, m - plus.value, minus.value - m});
        sandwich.record(viol, viol == 0.0);

        const bool collapsed = plus.value == minus.value;
        equality.record(flat ? std::abs(plus.value - minus.value) : 0.0, flat == collapsed);

        if (p.is_zero()) {
          const double e = rel(plus.value, minus.value * std::exp(2.0 * minus.stats.scaled_variance));
          geo_id.record(e, e <= 1e-12);
        } else {
          const double q = p.value();
          const double lhs = std::pow(plus.value, q) + std::pow(minus.value, q);
          const double e = rel(lhs, 2.0 * std::pow(m, q));
          power_id.record(e, e <= 1e-10);
        }
      });
    }

    for (auto d : kBoth) {
      evaluable([&] {
        for (const double q : {200.0, -200.0}) {
          const double ext = q > 0 ? *hi : *lo;
          const auto pm = penalized_power_mean(v, Order::of(q), d);
          const double e = std::abs(pm.value - ext) / ext;
          limits.record(e, e <= 0.02);
          const double ge = std::abs(pm.stats.factor - 1.0);
          g_inf.record(ge, ge <= 0.05);
        }
      });
      evaluable([&] {
        const double s0 = scaled_variance(v, Order::zero());
        const double target = std::exp(sign_of(d) * s0);
        const double e = rel(penalization_factor(v, Order::of(1e-4), d), target);
        g_zero.record(e, e <= 1e-3);
      });
      for (const double q : {-5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        evaluable([&] {
          const Order p = Order::of(q);
          if (flat) {
            g_sign.record(0.0, true);
            return;
          }
          const double deriv = fd_partial_g_in_p(v, p, d);
          // d g+/dp < 0 for p > 0, > 0 for p < 0; mirrored for g-.
          const double expected = (q > 0 ? -1.0 : 1.0) * sign_of(d);
          const bool ok = deriv * expected > 0.0;
          g_sign.record(ok ? 0.0 : std::abs(deriv), ok);
        });
      }
    }

    if (v.size() >= 2) {
      for (const double q : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
        const Order p = Order::of(q);
        for (std::size_t k = 0; k + 1 < v.size(); ++k) {
          evaluable([&] {
            const double dk = fd_partial_pm(v, k, p, dir);
            const double dh = fd_partial_pm(v, k + 1, p, dir);
            const double e = rel(mrc(v, k, k + 1, p), dk / dh);
            mrc_check.record(e, e <= 1e-5);
            const double ek = rel(dpm_di_exact(v, k, p, dir), dk);
            grad_exact.record(ek, ek <= 1e-5);
          });
        }
      }
    }
  }
  return report;
}

namespace {

struct Prepared {
  NormalizedMatrix data;
  RunConfig run;
};

Prepared prepare(const CliConfig& config, const std::vector<Order>& orders,
                 NormalizationSpec defaults) {
  if (config.input_path.empty()) throw ConfigError("--input is required");
  if (config.output_path.empty()) throw ConfigError("--output must not be empty");
  RunConfig run;
  run.orders = orders;
  run.direction = config.direction;
  run.normalization = defaults;
  if (config.norm_lower) run.normalization.lower = *config.norm_lower;
  if (config.norm_upper) run.normalization.upper = *config.norm_upper;
  run.validate();
  const auto raw = ingest(config.input_path);
  return {normalize(raw, run.normalization, run.orders), run};
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

int run(const CliConfig& config, std::ostream& err) {
  try {
    const auto prepared = prepare(config, config.orders, default_normalization(config.orders));
    const auto scores = score_units(prepared.data, prepared.run);
    const auto text = config.format == OutputFormat::Json
                          ? render_json(scores, config.direction, config.verbose)
                          : render_csv(scores, config.verbose);
    write_output(config.output_path, text);

    std::size_t flagged = 0;
    for (const auto& per_order : scores) {
      for (const auto& s : per_order.units) {
        if (s.flag != ScoreFlag::None) {
          ++flagged;
          err << "flagged: unit '" << s.unit_id << "' at p=" << s.order.label() << " ("
              << to_string(s.flag) << ")\n";
        }
      }
    }
    return flagged > 0 ? kExitFlagged : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int verify(const CliConfig& config, std::ostream& err) {
  try {
    const auto orders = config.orders.empty() ? default_verify_orders() : config.orders;
    const auto prepared = prepare(config, orders, NormalizationSpec{0.1, 1.0});
    const auto report = verify_dataset(prepared.data, prepared.run.orders, config.direction);
    write_output(config.output_path, report.to_json());
    for (const auto& [name, c] : report.checks) {
      if (!c.pass) err << "check failed: " << name << " (worst residual " << c.worst_residual << ")\n";
    }
    if (!report.flags.empty()) {
      err << report.flags.size() << " unit/order cells flagged\n";
      return kExitFlagged;
    }
    return report.all_pass() ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace penmean
