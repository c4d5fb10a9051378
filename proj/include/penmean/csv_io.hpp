#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "penmean/pipeline.hpp"

namespace penmean {

/// Reads an indicator matrix from a comma-separated file.
///
/// Layout: a header row (unit id label, then indicator names); an optional
/// row whose first cell is "#polarity" holding "+" or "-" per indicator
/// (default all "+"); then one row per unit. Blank lines are ignored.
IndicatorMatrix ingest(const std::filesystem::path& path);
IndicatorMatrix parse_indicator_csv(std::string_view text);

/// Comma-separated order list, e.g. "-inf,-1,0,0.5,1,+inf".
std::vector<Order> parse_orders(std::string_view text);

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

/// unit_id, then per order pm_<p>,rank_<p>,flag_<p> (plus mean_<p>,
/// svar_<p>,factor_<p> when verbose). Rows follow input unit order.
std::string render_csv(const std::vector<OrderScores>& scores, bool verbose);
std::string render_json(const std::vector<OrderScores>& scores, PenaltyDirection dir,
                        bool verbose);

}  // namespace penmean
