// Serial vs parallel scoring throughput on a random normalized matrix.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "penmean/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace penmean;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool identical(const std::vector<OrderScores>& a, const std::vector<OrderScores>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t o = 0; o < a.size(); ++o) {
    for (std::size_t i = 0; i < a[o].units.size(); ++i) {
      const auto& x = a[o].units[i];
      const auto& y = b[o].units[i];
      if (x.rank != y.rank || x.flag != y.flag || x.pm.has_value() != y.pm.has_value()) return false;
      if (x.pm && std::memcmp(&*x.pm, &*y.pm, sizeof(double)) != 0) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scoring benchmark"};
  std::size_t n = 200000, m = 8;
  int reps = 3;
  app.add_option("-n,--units", n)->capture_default_str();
  app.add_option("-m,--indicators", m)->capture_default_str();
  app.add_option("-r,--reps", reps)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  NormalizedMatrix data;
  for (std::size_t i = 0; i < n; ++i) data.unit_ids.push_back("u" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) data.indicator_names.push_back("x" + std::to_string(j));
  data.values.resize(n * m);
  for (auto& x : data.values) x = u(rng);

  RunConfig cfg;
  cfg.orders = {Order::neg_inf(), Order::of(-2), Order::of(-1), Order::zero(), Order::of(0.5),
                Order::of(1), Order::of(2), Order::of(3), Order::pos_inf()};
  cfg.normalization = default_normalization(cfg.orders);

  std::vector<OrderScores> ser, par;
  const double t_ser = best_of(reps, [&] { ser = score_units_serial(data, cfg); });
  const double t_par = best_of(reps, [&] { par = score_units(data, cfg); });

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  const double cells = static_cast<double>(n) * cfg.orders.size();
  std::cout << "units=" << n << " indicators=" << m << " orders=" << cfg.orders.size()
            << " threads=" << threads << "\n"
            << "serial   " << t_ser << " s  " << cells / t_ser / 1e6 << " Mcells/s\n"
            << "parallel " << t_par << " s  " << cells / t_par / 1e6 << " Mcells/s\n"
            << "speedup  " << t_ser / t_par << "\n"
            << "identical " << (identical(ser, par) ? "yes" : "NO") << "\n";
  return identical(ser, par) ? 0 : 1;
}
