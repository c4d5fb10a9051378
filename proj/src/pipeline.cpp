#include "penmean/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace penmean {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void IndicatorMatrix::validate() const {
  const std::size_t n = units();
  const std::size_t m = indicators();
  if (n < 2) throw ConfigError("indicator matrix needs at least two units");
  if (m < 1) throw ConfigError("indicator matrix needs at least one indicator");
  if (values.size() != n * m) throw ConfigError("indicator matrix values do not match n x m");
  if (polarities.size() != m) throw ConfigError("one polarity per indicator is required");

  std::set<std::string> seen;
  for (const auto& id : unit_ids) {
    if (!seen.insert(id).second) throw DuplicateUnitId(id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (std::isnan(values[i * m + j])) throw MissingCell(i + 1, j + 1, indicator_names[j]);
      if (!std::isfinite(values[i * m + j])) {
        throw ConfigError("non-finite value for unit '" + unit_ids[i] + "'");
      }
    }
  }
}

NormalizationSpec default_normalization(std::span<const Order> orders) {
  const bool needs_positive =
      std::any_of(orders.begin(), orders.end(), [](Order p) { return p.value() <= 0.0; });
  return needs_positive ? NormalizationSpec{0.1, 1.0} : NormalizationSpec{0.0, 1.0};
}

namespace {

void validate_spec(const NormalizationSpec& spec) {
  if (!(spec.lower >= 0.0 && spec.lower < 1.0)) {
    throw ConfigError("normalization lower bound must lie in [0, 1)");
  }
  if (!(spec.upper > spec.lower && spec.upper <= 1.0)) {
    throw ConfigError("normalization upper bound must lie in (lower, 1]");
  }
}

}  // namespace

NormalizedMatrix normalize(const IndicatorMatrix& raw, const NormalizationSpec& spec,
                           std::span<const Order> orders) {
  raw.validate();
  validate_spec(spec);
  if (spec.lower == 0.0 &&
      std::any_of(orders.begin(), orders.end(), [](Order p) { return p.value() <= 0.0; })) {
    throw PositivityError("orders p <= 0 need a positive normalization lower bound");
  }

  const std::size_t n = raw.units();
  const std::size_t m = raw.indicators();
  NormalizedMatrix out{raw.unit_ids, raw.indicator_names, std::vector<double>(n * m)};
  for (std::size_t j = 0; j < m; ++j) {
    double lo = raw.values[j];
    double hi = raw.values[j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, raw.values[i * m + j]);
      hi = std::max(hi, raw.values[i * m + j]);
    }
    if (!(hi > lo)) throw DegenerateIndicator(j, raw.indicator_names[j]);
    const bool positive = raw.polarities[j] == Polarity::Positive;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = raw.values[i * m + j];
      const double t = positive ? (x - lo) / (hi - lo) : (hi - x) / (hi - lo);
      out.values[i * m + j] = std::lerp(spec.lower, spec.upper, t);
    }
  }
  return out;
}

void RunConfig::validate() const {
  if (orders.empty()) throw ConfigError("at least one order is required");
  for (std::size_t a = 0; a < orders.size(); ++a) {
    for (std::size_t b = a + 1; b < orders.size(); ++b) {
      if (orders[a] == orders[b]) throw ConfigError("duplicate order " + orders[a].label());
    }
  }
  validate_spec(normalization);
}

std::string to_string(ScoreFlag flag) {
  switch (flag) {
    case ScoreFlag::None: return "";
    case ScoreFlag::PenaltyDomain: return "penalty_domain";
    case ScoreFlag::DegenerateMean: return "degenerate_mean";
    case ScoreFlag::Domain: return "domain";
  }
  return "";
}

UnitScore score_cell(std::span<const double> row, const std::string& unit_id, Order p,
                     PenaltyDirection dir) {
  UnitScore s;
  s.unit_id = unit_id;
  s.order = p;
  try {
    const auto r = penalized_power_mean(row, p, dir);
    s.mean = r.stats.mean;
    s.scaled_variance = r.stats.scaled_variance;
    s.factor = r.stats.factor;
    s.pm = r.value;
  } catch (const PenaltyDomainError& e) {
    s.flag = ScoreFlag::PenaltyDomain;
    s.mean = power_mean(row, p);
    s.scaled_variance = e.scaled_variance();
    s.factor = kNaN;
  } catch (const DegenerateMean&) {
    s.flag = ScoreFlag::DegenerateMean;
    s.mean = 0.0;
    s.scaled_variance = kNaN;
    s.factor = kNaN;
  } catch (const DomainError&) {
    s.flag = ScoreFlag::Domain;
    s.mean = kNaN;
    s.scaled_variance = kNaN;
    s.factor = kNaN;
  }
  return s;
}

void assign_ranks(std::vector<UnitScore>& scores) {
  std::vector<std::size_t> ok;
  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (scores[i].pm ? ok : flagged).push_back(i);
  }
  std::sort(ok.begin(), ok.end(), [&](std::size_t a, std::size_t b) {
    if (*scores[a].pm != *scores[b].pm) return *scores[a].pm > *scores[b].pm;
    return scores[a].unit_id < scores[b].unit_id;
  });
  for (std::size_t pos = 0; pos < ok.size(); ++pos) {
    const bool tie = pos > 0 && *scores[ok[pos]].pm == *scores[ok[pos - 1]].pm;
    scores[ok[pos]].rank = tie ? scores[ok[pos - 1]].rank : static_cast<int>(pos + 1);
  }
  std::sort(flagged.begin(), flagged.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].unit_id < scores[b].unit_id;
  });
  for (std::size_t pos = 0; pos < flagged.size(); ++pos) {
    scores[flagged[pos]].rank = static_cast<int>(ok.size() + pos + 1);
  }
}

namespace {

std::vector<OrderScores> allocate(const NormalizedMatrix& normalized, const RunConfig& config) {
  config.validate();
  std::vector<OrderScores> out(config.orders.size());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o].order = config.orders[o];
    out[o].units.resize(normalized.units());
  }
  return out;
}

void rank_all(std::vector<OrderScores>& out) {
  for (auto& per_order : out) assign_ranks(per_order.units);
}

}  // namespace

std::vector<OrderScores> score_units(const NormalizedMatrix& normalized, const RunConfig& config) {
  auto out = allocate(normalized, config);
  const auto n = static_cast<std::ptrdiff_t>(normalized.units());
  const auto cells = n * static_cast<std::ptrdiff_t>(out.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t cell = 0; cell < cells; ++cell) {
    const auto o = static_cast<std::size_t>(cell / n);
    const auto i = static_cast<std::size_t>(cell % n);
    out[o].units[i] = score_cell(normalized.row(i), normalized.unit_ids[i], out[o].order,
                                 config.direction);
  }

  rank_all(out);
  return out;
}

std::vector<OrderScores> score_units_serial(const NormalizedMatrix& normalized,
                                            const RunConfig& config) {
  auto out = allocate(normalized, config);
  for (std::size_t o = 0; o < out.size(); ++o) {
    for (std::size_t i = 0; i < normalized.units(); ++i) {
      out[o].units[i] = score_cell(normalized.row(i), normalized.unit_ids[i], out[o].order,
                                   config.direction);
    }
  }
  rank_all(out);
  return out;
}

RankTable rank_table(std::span<const UnitScore> scores) {
  std::set<std::string> ids;
  std::vector<Order> orders;
  for (const auto& s : scores) {
    ids.insert(s.unit_id);
    if (std::find(orders.begin(), orders.end(), s.order) == orders.end()) orders.push_back(s.order);
  }
  std::sort(orders.begin(), orders.end(), [](Order a, Order b) { return a < b; });

  RankTable table;
  table.unit_ids.assign(ids.begin(), ids.end());
  table.orders = orders;
  table.ranks.assign(ids.size() * orders.size(), 0);
  table.pm.assign(ids.size() * orders.size(), std::nullopt);
  for (const auto& s : scores) {
    const auto u = static_cast<std::size_t>(
        std::lower_bound(table.unit_ids.begin(), table.unit_ids.end(), s.unit_id) -
        table.unit_ids.begin());
    const auto o = static_cast<std::size_t>(
        std::find(orders.begin(), orders.end(), s.order) - orders.begin());
    table.ranks[u * orders.size() + o] = s.rank;
    table.pm[u * orders.size() + o] = s.pm;
  }
  return table;
}

RankTable rank_table(std::span<const OrderScores> scores) {
  std::vector<UnitScore> flat;
  for (const auto& per_order : scores) {
    flat.insert(flat.end(), per_order.units.begin(), per_order.units.end());
  }
  return rank_table(flat);
}

}  // namespace penmean
