#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mmwt/errors.hpp"
#include "mmwt/coverage.hpp"
#include "mmwt/monte_carlo.hpp"

using namespace mmwt;

namespace {

double classical_alpha4(double gamma) {
  const double s = std::sqrt(gamma);
  return 1.0 / (1.0 + s * (kPi / 2 - std::atan(1.0 / s)));
}

bool agrees(const EmpiricalEstimate& e, double expected, double slack = 0.0) {
  // Four standard errors, with a floor for estimates near 0 or 1.
  return std::abs(e.mean - expected) <= 4.0 * std::max(e.ci95_halfwidth / 1.96, 1e-3) + slack;
}

}  // namespace

TEST(MonteCarlo, EstimateFromCounts) {
  const auto e = EmpiricalEstimate::from_counts(300, 1000);
  EXPECT_DOUBLE_EQ(e.mean, 0.3);
  EXPECT_NEAR(e.ci95_halfwidth, 1.96 * std::sqrt(0.3 * 0.7 / 1000), 1e-15);
  EXPECT_EQ(e.n, 1000);
}

TEST(MonteCarlo, DefaultWindow) {
  NetworkParams p;
  EXPECT_NEAR(default_window_radius(p), std::max(5.0 / 0.003, 10.0 / std::sqrt(kPi * p.lambda_m)), 1e-9);
}

TEST(MonteCarlo, ClassicalPppOracle) {
  NetworkParams p;
  p.path_loss.alpha_los = p.path_loss.alpha_nlos = 4.0;
  p.path_loss.c_nlos = p.path_loss.c_los;
  p.macro_tx = {0.0, 0.0, 30.0};
  p.macro_rx = {0.0, 0.0, 90.0};
  p.vertical_pattern = false;
  p.sigma2 = 0.0;
  DropConfig drop;
  drop.n_drops = 20000;
  drop.rng_seed = 11;
  const std::vector<double> gammas{0.1, 1.0, 10.0};
  const auto est = drop_homogeneous_sweep(p, drop, gammas, 0.0);
  // The finite window drops far interferers, which biases the estimate up by a hair.
  for (std::size_t i = 0; i < gammas.size(); ++i)
    EXPECT_TRUE(agrees(est[i], classical_alpha4(gammas[i]), 0.003)) << est[i].mean << " vs " << classical_alpha4(gammas[i]);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  NetworkParams p;
  DropConfig drop;
  drop.n_drops = 3000;
  drop.rng_seed = 5;
  drop.threads = 1;
  const auto a = drop_homogeneous(p, drop, 3.0, 5.0);
  drop.threads = 4;
  const auto b = drop_homogeneous(p, drop, 3.0, 5.0);
  EXPECT_EQ(a.mean, b.mean);
  drop.rng_seed = 6;
  EXPECT_NE(drop_homogeneous(p, drop, 3.0, 5.0).mean, a.mean);
}

TEST(MonteCarlo, WindowDoublingLeavesCoverageUnchanged) {
  NetworkParams p;
  p.lambda_m = 2e-4;
  p.path_loss.beta = 0.006;
  DropConfig drop;
  drop.n_drops = 6000;
  const auto a = drop_homogeneous(p, drop, 10.0, 8.0);
  drop.window_radius = 2 * default_window_radius(p);
  drop.rng_seed = 2;
  const auto b = drop_homogeneous(p, drop, 10.0, 8.0);
  EXPECT_LE(std::abs(a.mean - b.mean), 3.0 * std::hypot(a.ci95_halfwidth, b.ci95_halfwidth) / 1.96);
}

TEST(MonteCarlo, AnalyticHomogeneousCoverage) {
  NetworkParams p;
  p.fading.nakagami_m = 2;
  DropConfig drop;
  drop.n_drops = 10000;
  const auto e = drop_homogeneous(p, drop, 3.0, 5.0);
  EXPECT_TRUE(agrees(e, coverage_homogeneous(p, 3.0, 5.0).value)) << e.mean;
}

TEST(MonteCarlo, SilencedFractionMatchesHoleProbability) {
  NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  p.path_loss.beta = 0.006;
  DropConfig drop;
  drop.n_drops = 4000;
  drop.scenario = Scenario::kHetNet;
  const std::vector<double> r_cs{0.0, 40.0, max_sleep_radius(p)};
  const std::vector<double> g{10.0};
  const auto est = drop_hetnet_sweep(p, drop, g, g, 5.0, r_cs);
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    const double q = 1.0 - std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]);
    EXPECT_TRUE(agrees(est.silenced_exact[j], q)) << j;
    EXPECT_TRUE(agrees(est.silenced_thinned[j], q)) << j;
  }
  EXPECT_DOUBLE_EQ(est.silenced_exact[0].mean, 0.0);
}

TEST(MonteCarlo, FemtoCoverageAboveInterferenceLimitedBound) {
  NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  p.sigma2 = 0.0;
  p.path_loss.beta = 0.006;
  DropConfig drop;
  drop.n_drops = 4000;
  drop.scenario = Scenario::kHetNet;
  for (double r_c : {0.0, 60.0}) {
    const auto e = drop_hetnet(p, drop, 10.0, 10.0, 5.0, r_c);
    const double bound = coverage_femto_lower_bound(p, 10.0, r_c).value;
    EXPECT_GE(e.femto.mean + 3.0 * e.femto.ci95_halfwidth / 1.96, bound) << r_c;
  }
}

TEST(MonteCarlo, ServingDistanceSamples) {
  NetworkParams p;
  DropConfig drop;
  drop.n_drops = 20000;
  const auto s = sample_serving_distance(p, drop);
  ASSERT_EQ(s.size(), 20000u);
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  double below = 0.0;
  const double median = d.ccdf_inverse(0.5);
  for (double r : s) below += r <= median;
  EXPECT_NEAR(below / s.size(), 0.5, 0.015);

  // A window too small to hold any MBS most of the time.
  drop.window_radius = 5.0;
  drop.n_drops = 200;
  int empty = 0;
  for (double r : sample_serving_distance(p, drop)) empty += std::isinf(r);
  EXPECT_GT(empty, 150);
}

TEST(MonteCarlo, RejectsOversizedDrops) {
  NetworkParams p;
  DropConfig drop;
  drop.window_radius = 1e6;
  drop.n_drops = 1;
  EXPECT_THROW(drop_homogeneous(p, drop, 1.0, 5.0), DomainError);
}
