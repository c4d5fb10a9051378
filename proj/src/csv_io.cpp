#include "penmean/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace penmean {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

Polarity parse_polarity(std::string_view cell, std::size_t row, std::size_t col) {
  if (cell == "+") return Polarity::Positive;
  // ASCII hyphen or U+2212 MINUS SIGN
  if (cell == "-" || cell == "\xE2\x88\x92") return Polarity::Negative;
  throw ParseError(row, col, "polarity must be '+' or '-', got '" + std::string(cell) + "'");
}

}  // namespace

IndicatorMatrix parse_indicator_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  IndicatorMatrix mat;
  bool have_header = false;
  bool polarity_allowed = false;
  std::size_t row = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++row;
    if (line.empty()) continue;

    const auto cells = split(line, ',');
    if (!have_header) {
      if (cells.size() < 2) throw ParseError(row, 1, "header needs a unit id column and indicators");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c].empty()) throw ParseError(row, c + 1, "empty indicator name");
        mat.indicator_names.emplace_back(cells[c]);
      }
      mat.polarities.assign(mat.indicator_names.size(), Polarity::Positive);
      have_header = true;
      polarity_allowed = true;
      continue;
    }

    const std::size_t m = mat.indicator_names.size();
    if (cells.size() > m + 1) throw ParseError(row, m + 2, "more cells than header columns");

    if (cells[0] == "#polarity") {
      if (!polarity_allowed) throw ParseError(row, 1, "#polarity row must directly follow the header");
      if (cells.size() < m + 1) throw ParseError(row, cells.size() + 1, "missing polarity");
      for (std::size_t c = 1; c <= m; ++c) mat.polarities[c - 1] = parse_polarity(cells[c], row, c + 1);
      polarity_allowed = false;
      continue;
    }
    polarity_allowed = false;

    if (cells[0].empty()) throw ParseError(row, 1, "empty unit id");
    for (const auto& id : mat.unit_ids) {
      if (id == cells[0]) throw DuplicateUnitId(id);
    }
    mat.unit_ids.emplace_back(cells[0]);
    for (std::size_t c = 1; c <= m; ++c) {
      if (c >= cells.size() || cells[c].empty()) throw MissingCell(row, c + 1, mat.indicator_names[c - 1]);
      const auto cell = cells[c];
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(x)) {
        throw ParseError(row, c + 1, "not a finite decimal: '" + std::string(cell) + "'");
      }
      mat.values.push_back(x);
    }
  }
  if (!have_header) throw ParseError(1, 1, "input is empty");
  mat.validate();
  return mat;
}

IndicatorMatrix ingest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_indicator_csv(buf.str());
}

std::vector<Order> parse_orders(std::string_view text) {
  if (trim(text).empty()) throw ConfigError("empty orders list");
  std::vector<Order> orders;
  for (const auto cell : split(text, ',')) {
    if (cell.empty()) throw ConfigError("empty entry in orders list");
    orders.push_back(Order::parse(cell));
  }
  return orders;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string render_csv(const std::vector<OrderScores>& scores, bool verbose) {
  std::string out = "unit_id";
  for (const auto& per_order : scores) {
    const auto p = per_order.order.label();
    out += ",pm_" + p + ",rank_" + p + ",flag_" + p;
    if (verbose) out += ",mean_" + p + ",svar_" + p + ",factor_" + p;
  }
  out += '\n';
  const std::size_t n = scores.empty() ? 0 : scores.front().units.size();
  for (std::size_t i = 0; i < n; ++i) {
    out += scores.front().units[i].unit_id;
    for (const auto& per_order : scores) {
      const auto& s = per_order.units[i];
      out += ',';
      if (s.pm) out += format_number(*s.pm);
      out += ',' + std::to_string(s.rank) + ',' + to_string(s.flag);
      if (verbose) {
        out += ',' + format_number(s.mean) + ',' + format_number(s.scaled_variance) + ',' +
               format_number(s.factor);
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const std::vector<OrderScores>& scores, PenaltyDirection dir,
                        bool verbose) {
  using nlohmann::ordered_json;
  const auto number = [](double x) { return std::isnan(x) ? ordered_json(nullptr) : ordered_json(x); };

  ordered_json doc;
  doc["direction"] = dir == PenaltyDirection::Minus ? "minus" : "plus";
  doc["orders"] = ordered_json::array();
  for (const auto& per_order : scores) doc["orders"].push_back(per_order.order.label());
  doc["units"] = ordered_json::array();
  const std::size_t n = scores.empty() ? 0 : scores.front().units.size();
  for (std::size_t i = 0; i < n; ++i) {
    ordered_json unit;
    unit["unit_id"] = scores.front().units[i].unit_id;
    unit["scores"] = ordered_json::array();
    for (const auto& per_order : scores) {
      const auto& s = per_order.units[i];
      ordered_json cell;
      cell["p"] = s.order.label();
      cell["pm"] = s.pm ? ordered_json(*s.pm) : ordered_json(nullptr);
      cell["rank"] = s.rank;
      cell["flag"] = s.flag == ScoreFlag::None ? ordered_json(nullptr) : ordered_json(to_string(s.flag));
      if (verbose) {
        cell["mean"] = number(s.mean);
        cell["svar"] = number(s.scaled_variance);
        cell["factor"] = number(s.factor);
      }
      unit["scores"].push_back(std::move(cell));
    }
    doc["units"].push_back(std::move(unit));
  }
  return doc.dump(2) + "\n";
}

}  // namespace penmean
