#pragma once

// Raw indicator matrix -> normalized matrix -> per-(unit, order) scores and
// ranks. The scoring kernel has an OpenMP version and a serial reference;
// both produce bitwise identical results.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "penmean/core_math.hpp"

namespace penmean {

enum class Polarity { Positive, Negative };

/// n units x m indicators, row-major.
struct IndicatorMatrix {
  std::vector<std::string> unit_ids;
  std::vector<std::string> indicator_names;
  std::vector<double> values;
  std::vector<Polarity> polarities;

  std::size_t units() const noexcept { return unit_ids.size(); }
  std::size_t indicators() const noexcept { return indicator_names.size(); }

  /// Throws ConfigError on shape problems, MissingCell on NaN,
  /// DuplicateUnitId and DegenerateIndicator.
  void validate() const;
};

struct NormalizationSpec {
  double lower = 0.0;
  double upper = 1.0;
};

/// [0.1, 1] when any order is <= 0, else [0, 1].
NormalizationSpec default_normalization(std::span<const Order> orders);

struct NormalizedMatrix {
  std::vector<std::string> unit_ids;
  std::vector<std::string> indicator_names;
  std::vector<double> values;

  std::size_t units() const noexcept { return unit_ids.size(); }
  std::size_t indicators() const noexcept { return indicator_names.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * indicators(), indicators());
  }
};

/// Polarity-aware min-max scaling into [lower, upper]. Column minima map to
/// lower and maxima to upper exactly (reversed for negative polarity).
/// Throws PositivityError if lower == 0 while some order is <= 0.
NormalizedMatrix normalize(const IndicatorMatrix& raw, const NormalizationSpec& spec,
                           std::span<const Order> orders = {});

struct RunConfig {
  std::vector<Order> orders;
  PenaltyDirection direction = PenaltyDirection::Minus;
  NormalizationSpec normalization;

  /// ConfigError for empty or duplicated orders or a bad normalization range.
  void validate() const;
};

/// Reason a cell has no score.
enum class ScoreFlag { None, PenaltyDomain, DegenerateMean, Domain };

std::string to_string(ScoreFlag flag);

struct UnitScore {
  std::string unit_id;
  Order order;
  double mean = 0.0;             // NaN when not computable
  double scaled_variance = 0.0;  // NaN when not computable
  double factor = 0.0;           // NaN when flagged
  std::optional<double> pm;      // absent iff flagged
  int rank = 0;
  ScoreFlag flag = ScoreFlag::None;
};

struct OrderScores {
  Order order;
  std::vector<UnitScore> units;  // input unit order
};

/// Scores one unit at one order; penalty and domain failures become flags.
UnitScore score_cell(std::span<const double> row, const std::string& unit_id, Order p,
                     PenaltyDirection dir);

/// Competition ranking (1,1,3) by descending pm, ties broken by unit_id for
/// listing order only. Flagged units follow, one rank each, by unit_id.
void assign_ranks(std::vector<UnitScore>& scores);

/// Parallel over (unit, order) cells.
std::vector<OrderScores> score_units(const NormalizedMatrix& normalized, const RunConfig& config);

/// Single-threaded reference for score_units.
std::vector<OrderScores> score_units_serial(const NormalizedMatrix& normalized,
                                            const RunConfig& config);

/// unit x order grid, units sorted by id and orders ascending.
struct RankTable {
  std::vector<std::string> unit_ids;
  std::vector<Order> orders;
  std::vector<int> ranks;                // units x orders
  std::vector<std::optional<double>> pm;  // units x orders

  int rank(std::size_t unit, std::size_t order) const { return ranks[unit * orders.size() + order]; }
  std::optional<double> score(std::size_t unit, std::size_t order) const {
    return pm[unit * orders.size() + order];
  }
  friend bool operator==(const RankTable&, const RankTable&) = default;
};

RankTable rank_table(std::span<const UnitScore> scores);
RankTable rank_table(std::span<const OrderScores> scores);

}  // namespace penmean
