#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "penmean/verification.hpp"

using namespace penmean;
using oracle::Vec;

namespace {
constexpr auto kMinus = PenaltyDirection::Minus;
constexpr auto kPlus = PenaltyDirection::Plus;
const Vec kPair{0.25, 1.0};
const double kLn2Sq = std::numbers::ln2 * std::numbers::ln2;
// Reference derivatives below come from 40-digit mpmath differentiation of
// the defining formulas.
const Vec kTriple{0.27, 0.17, 0.87};

double rel(double a, double b) { return oracle::rel_err(a, b); }
}  // namespace

TEST_CASE("loss examples") {
  CHECK(loss(0.4, Vec{0.4, 0.4, 0.4}, Order::of(3)) == 0.0);
  CHECK(loss(0.625, kPair, Order::of(1)) == doctest::Approx(0.140625).epsilon(1e-15));
  CHECK(loss(0.5, kPair, Order::zero()) == doctest::Approx(kLn2Sq).epsilon(1e-14));
  CHECK(loss(-2.0, Vec{-1.0, 3.0}, Order::of(1)) == doctest::Approx(13.0).epsilon(1e-15));
  CHECK(loss(0.3, kPair, Order::of(2)) > 0.0);

  CHECK_THROWS_AS(loss(0.0, kPair, Order::of(2)), DomainError);
  CHECK_THROWS_AS(loss(0.5, kPair, Order::pos_inf()), UnsupportedOrder);
  CHECK_THROWS_AS(loss(0.5, Vec{}, Order::of(2)), EmptyVector);
}

TEST_CASE("minimize_loss examples") {
  const auto flat = minimize_loss(Vec{0.6, 0.6}, Order::of(2), {0.3, 1.2});
  CHECK(rel(flat.argmin, 0.6) <= 1e-14);
  CHECK(flat.loss_at_argmin <= 1e-28);

  const auto one = minimize_loss(kPair, Order::of(1), {0.01, 2.0});
  CHECK(std::abs(one.argmin - 0.625) <= 1e-8);
  CHECK(one.transformed_variance == doctest::Approx(0.140625).epsilon(1e-15));
  CHECK(one.transformed_mean == doctest::Approx(-0.375).epsilon(1e-15));

  const auto geo = minimize_loss(kPair, Order::zero(), {0.01, 2.0});
  CHECK(std::abs(geo.argmin - 0.5) <= 1e-8);
  CHECK(geo.loss_at_argmin == doctest::Approx(kLn2Sq).epsilon(1e-12));

  // p = 1 admits a nonpositive bracket
  const auto signed_mean = minimize_loss(Vec{-1.0, 3.0}, Order::of(1), {-2.0, 4.0});
  CHECK(std::abs(signed_mean.argmin - 1.0) <= 1e-8);
}

TEST_CASE("minimize_loss rejects bad brackets") {
  CHECK_THROWS_AS(minimize_loss(kPair, Order::of(2), {0.3, 2.0}), BracketError);
  CHECK_THROWS_AS(minimize_loss(kPair, Order::of(2), {0.1, 0.9}), BracketError);
  CHECK_THROWS_AS(minimize_loss(kPair, Order::of(2), {0.0, 2.0}), BracketError);
  CHECK_THROWS_AS(minimize_loss(kPair, Order::of(2), {2.0, 0.1}), BracketError);
  CHECK_THROWS_AS(minimize_loss(kPair, Order::neg_inf()), UnsupportedOrder);
  const auto b = default_bracket(kPair);
  CHECK(b.lo == 0.125);
  CHECK(b.hi == 2.0);
}

TEST_CASE("golden-section minimizer recovers the power mean") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> up(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const auto v = oracle::random_vector(rng, 2 + i % 11, 0.05, 1.0);
    const Order p = Order::of(up(rng));
    const double mp = power_mean(v, p);
    const auto rep = minimize_loss(v, p);
    CHECK(std::abs(rep.argmin - mp) <= 1e-8);
    CHECK(rep.loss_at_argmin >= 0.0);
    const double scale = std::max(1.0, rep.transformed_variance);
    CHECK(std::abs(loss(mp, v, p) - rep.transformed_variance) <= 1e-12 * scale);
    CHECK(std::abs(rep.loss_at_argmin - rep.transformed_variance) <= 1e-10 * scale);
    CHECK(rel(rep.transformed_mean, box_cox(mp, p)) == 0.0);

    const double at_mean = loss(mp, v, p);
    for (double delta : {1e-3, 1e-2, 1e-1}) {
      CHECK(loss(mp + delta, v, p) > at_mean);
      if (mp - delta > 0.0) CHECK(loss(mp - delta, v, p) > at_mean);
    }
  }
}

TEST_CASE("fd_partial_pm examples") {
  CHECK(fd_partial_pm(Vec{0.7, 0.7}, 0, Order::of(1), kMinus) == doctest::Approx(0.5).epsilon(1e-9));

  // d PM / d v_k is not (1/m) p v_k^(p-1) g: the scaled variance moves with v_k.
  const double d0 = fd_partial_pm(kPair, 0, Order::zero(), kMinus);
  CHECK(rel(d0, 1.4759305500708594) <= 1e-8);
  CHECK(dpm_di_reduced(kPair, 0, Order::zero(), kMinus) ==
        doctest::Approx(0.5 * 4.0 * std::exp(-kLn2Sq)).epsilon(1e-14));

  const double ratio = fd_partial_pm(kPair, 0, Order::of(2), kMinus) /
                       fd_partial_pm(kPair, 1, Order::of(2), kMinus);
  CHECK(rel(ratio, 1.1203071672354949) <= 1e-8);
  CHECK(mrc(kPair, 0, 1, Order::of(2)) == 0.25);

  // MPI: d/dv = 1/m - d(S^2/M)/dv gives (1.28, 0.08), so the rate is 16.
  CHECK(rel(fd_partial_pm(kPair, 0, Order::of(1), kMinus), 1.28) <= 1e-8);
  CHECK(rel(fd_partial_pm(kPair, 1, Order::of(1), kMinus), 0.08) <= 1e-7);

  CHECK_THROWS_AS(fd_partial_pm(kPair, 2, Order::of(1), kMinus), IndexError);
  CHECK_THROWS_AS(fd_partial_pm(Vec{0.0, 1.0}, 0, Order::of(2), kMinus), DomainError);
  CHECK_THROWS_AS(fd_partial_pm(kPair, 0, Order::pos_inf(), kMinus), UnsupportedOrder);
}

TEST_CASE("exact gradient matches high precision references and finite differences") {
  struct Row { double p, d0, d1; };
  const Row rows[] = {
      {-2, 0.078212072792545071, 1.1294808047271462},
      {0, 0.38731726292298570, 1.0019097730421560},
      {0.5, 0.56506394952460019, 0.96870086171380243},
      {2, 0.71830807758871261, 0.48095801830764590},
  };
  for (const auto& r : rows) {
    const Order p = Order::of(r.p);
    CHECK(rel(dpm_di_exact(kTriple, 0, p, kMinus), r.d0) <= 1e-12);
    CHECK(rel(dpm_di_exact(kTriple, 1, p, kMinus), r.d1) <= 1e-12);
    CHECK(rel(mrc_exact(kTriple, 0, 1, p, kMinus), r.d0 / r.d1) <= 1e-12);
  }
  CHECK(rel(dpm_di_exact(kPair, 0, Order::of(1), kMinus), 1.28) <= 1e-14);

  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const auto v = oracle::random_vector(rng, 2 + i % 8, 0.1, 1.0);
    for (double p : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
      for (auto d : {kMinus, kPlus}) {
        double fd = 0.0;
        try {
          fd = fd_partial_pm(v, 0, Order::of(p), d);
        } catch (const PenaltyDomainError&) {
          continue;
        }
        CHECK(std::abs(fd - dpm_di_exact(v, 0, Order::of(p), d)) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("fd_partial_g_in_p examples") {
  CHECK(fd_partial_g_in_p(Vec{0.5, 0.5}, Order::of(2), kPlus) == 0.0);
  const double at_one = fd_partial_g_in_p(kPair, Order::of(1), kPlus);
  CHECK(at_one < 0.0);
  CHECK(rel(at_one, -0.24584215698718847) <= 1e-8);
  const double at_minus_one = fd_partial_g_in_p(kPair, Order::of(-1), kPlus);
  CHECK(at_minus_one > 0.0);
  CHECK(rel(at_minus_one, 0.27657888430700803) <= 1e-8);

  // Dropping the cross term in dS~^2/dp overstates the slope threefold here.
  CHECK(rel(dg_dp_reduced(kPair, Order::of(1), kPlus), -0.77817919165722647) <= 1e-13);
  CHECK(rel(dg_dp_exact(kPair, Order::of(1), kPlus), -0.24584215698718847) <= 1e-12);

  CHECK_THROWS_AS(fd_partial_g_in_p(kPair, Order::of(0.05), kPlus), DomainError);
  CHECK_THROWS_AS(fd_partial_g_in_p(kPair, Order::pos_inf(), kPlus), UnsupportedOrder);
  CHECK_THROWS_AS(fd_partial_g_in_p(Vec{0.0, 0.0, 0.0, 1.0}, Order::of(1), kMinus),
                  PenaltyDomainError);
}

TEST_CASE("the minus factor can decrease in p for p > 0") {
  const double slope = fd_partial_g_in_p(kTriple, Order::of(1), kMinus);
  CHECK(slope < 0.0);
  CHECK(rel(slope, -0.048880194872180918) <= 1e-7);
  CHECK(rel(dg_dp_exact(kTriple, Order::of(1), kMinus), -0.048880194872180918) <= 1e-11);
  CHECK(dg_dp_reduced(kTriple, Order::of(1), kMinus) > 0.0);
}

TEST_CASE("fd_partial_svar_in_p examples") {
  CHECK(fd_partial_svar_in_p(Vec{0.9, 0.9, 0.9}, Order::of(3)) == 0.0);

  const double at_one = fd_partial_svar_in_p(kPair, Order::of(1));
  CHECK(rel(at_one, -0.18766296532996200) <= 1e-8);
  CHECK(dsvar_dp_reduced(kPair, Order::of(1)) == doctest::Approx(-0.72).epsilon(1e-14));
  CHECK(rel(dsvar_dp_exact(kPair, Order::of(1)), -0.18766296532996200) <= 1e-12);

  const double at_minus_two = fd_partial_svar_in_p(kPair, Order::of(-2));
  CHECK(at_minus_two > 0.0);
  CHECK(rel(at_minus_two, 0.12691621276841568) <= 1e-8);
  CHECK(rel(dsvar_dp_reduced(kPair, Order::of(-2)), 0.19463667820069204) <= 1e-13);

  CHECK(rel(dsvar_dp_exact(kTriple, Order::of(1)), -0.10533512835084239) <= 1e-12);
  CHECK_THROWS_AS(fd_partial_svar_in_p(kPair, Order::of(-0.01)), DomainError);
}

TEST_CASE("exact derivatives in p agree with finite differences") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    const auto v = oracle::random_vector(rng, 2 + i % 9, 0.1, 1.0);
    for (double p : {-5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0}) {
      const Order q = Order::of(p);
      const double fd_s = fd_partial_svar_in_p(v, q);
      CHECK(std::abs(fd_s - dsvar_dp_exact(v, q)) <= 1e-6 * std::max(1.0, std::abs(fd_s)));
      for (auto d : {kMinus, kPlus}) {
        double fd_g = 0.0;
        try {
          fd_g = fd_partial_g_in_p(v, q, d);
        } catch (const PenaltyDomainError&) {
          continue;
        }
        CHECK(std::abs(fd_g - dg_dp_exact(v, q, d)) <= 1e-5 * std::max(1.0, std::abs(fd_g)));
      }
    }
  }
}

TEST_CASE("rank conditions as literally stated") {
  std::mt19937_64 rng(53);
  for (double p : {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
    const Order q = Order::of(p);
    int literal_mismatch = 0;
    int flipped_mismatch = 0;
    int pairs = 0;
    for (int i = 0; i < 400; ++i) {
      const std::size_t m = 2 + i % 8;
      auto a = oracle::random_vector(rng, m, 0.05, 1.0);
      auto b = oracle::random_vector(rng, m, 0.05, 1.0);
      if (power_mean(a, q) < power_mean(b, q)) std::swap(a, b);
      for (auto d : {kMinus, kPlus}) {
        PenalizedMean k, h;
        try {
          k = penalized_power_mean(a, q, d);
          h = penalized_power_mean(b, q, d);
        } catch (const PenaltyDomainError&) {
          continue;
        }
        ++pairs;
        const bool direct = k.value > h.value;
        const bool claim = rank_condition(k.stats, h.stats, q, d);
        literal_mismatch += direct != claim;
        // Raising to a negative power reverses the inequality.
        flipped_mismatch += direct != (p < 0 ? !claim : claim);
      }
    }
    CAPTURE(p);
    CHECK(pairs > 400);
    if (p >= 0) {
      CHECK(literal_mismatch == 0);
    } else {
      CHECK(literal_mismatch > pairs / 2);
      CHECK(flipped_mismatch == 0);
    }
  }
}
