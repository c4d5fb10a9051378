// penmean: score and rank units with penalized power means.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "penmean/cli.hpp"
#include "penmean/csv_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Penalized power mean scoring and verification"};

  std::string orders;
  std::string format = "csv";
  std::string direction = "minus";
  double norm_lower = 0.0;
  double norm_upper = 1.0;
  penmean::CliConfig config;

  app.add_option("--input", config.input_path, "Indicator matrix CSV")->required();
  app.add_option("--output", config.output_path, "Output file, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  auto* orders_opt = app.add_option(
      "--orders", orders, "Comma-separated orders, e.g. --orders=-inf,-1,0,1,+inf");
  app.add_option("--direction", direction, "Penalty sign: minus or plus")
      ->check(CLI::IsMember({"minus", "plus"}))
      ->capture_default_str();
  auto* lower_opt = app.add_option("--norm-lower", norm_lower, "Normalization lower bound");
  auto* upper_opt = app.add_option("--norm-upper", norm_upper, "Normalization upper bound");
  app.add_flag("--verbose", config.verbose, "Add mean, scaled variance and factor columns");
  app.add_flag("--verify", config.verify, "Write a verification report instead of scores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : penmean::kExitInputError;
  }

  config.format = format == "json" ? penmean::OutputFormat::Json : penmean::OutputFormat::Csv;
  config.direction =
      direction == "plus" ? penmean::PenaltyDirection::Plus : penmean::PenaltyDirection::Minus;
  if (*lower_opt) config.norm_lower = norm_lower;
  if (*upper_opt) config.norm_upper = norm_upper;

  try {
    if (*orders_opt) {
      config.orders = penmean::parse_orders(orders);
    } else if (!config.verify) {
      throw penmean::ConfigError("--orders is required");
    }
  } catch (const penmean::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return penmean::kExitInputError;
  }

  return config.verify ? penmean::verify(config, std::cerr) : penmean::run(config, std::cerr);
}
