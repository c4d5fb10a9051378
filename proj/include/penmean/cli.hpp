#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "penmean/pipeline.hpp"

namespace penmean {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitFlagged = 2;
inline constexpr int kExitCheckFailed = 3;

enum class OutputFormat { Csv, Json };

struct CliConfig {
  std::string input_path;
  std::string output_path = "-";  // "-" is stdout
  OutputFormat format = OutputFormat::Csv;
  std::vector<Order> orders;
  PenaltyDirection direction = PenaltyDirection::Minus;
  std::optional<double> norm_lower;
  std::optional<double> norm_upper;
  bool verbose = false;
  bool verify = false;
};

/// Orders checked by verify when none are given.
std::vector<Order> default_verify_orders();

struct CheckResult {
  bool pass = true;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t failures = 0;

  void record(double residual, bool ok);
};

struct UnitFlag {
  std::string unit_id;
  Order order;
  ScoreFlag flag;
};

struct VerifyReport {
  std::map<std::string, CheckResult> checks;
  std::vector<UnitFlag> flags;

  bool all_pass() const;
  std::string to_json() const;
};

/// Runs the identity, limit, derivative and compensation checks on every
/// unit of a normalized dataset.
VerifyReport verify_dataset(const NormalizedMatrix& data, const std::vector<Order>& orders,
                            PenaltyDirection dir);

/// Scores the input file and writes the table. Messages go to err.
int run(const CliConfig& config, std::ostream& err);

/// Writes a JSON verification report for the input file.
int verify(const CliConfig& config, std::ostream& err);

}  // namespace penmean
