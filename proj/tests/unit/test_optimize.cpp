#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mmwt/errors.hpp"
#include "mmwt/optimize.hpp"

using namespace mmwt;

TEST(Optimize, GridPointsIncludeBothEnds) {
  const auto g = grid_points(0.0, 1.0, 0.3);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LE(g[i] - g[i - 1], 0.3 + 1e-12);
  EXPECT_EQ(grid_points(0.0, 90.0, 0.25).size(), 361u);
  EXPECT_EQ(grid_points(2.0, 2.0, 0.25).size(), 1u);
}

TEST(Optimize, BisectionEvaluationBound) {
  EXPECT_EQ(bisection_evaluation_bound(15.0, 0.25), 7);  // ceil(log2 60) + 1
  EXPECT_EQ(bisection_evaluation_bound(16.0, 0.25), 7);
  EXPECT_EQ(bisection_evaluation_bound(0.2, 0.25), 1);
}

TEST(Optimize, ExhaustiveReturnsTheGridMaximum) {
  NetworkParams p;
  const auto out = optimize_tilt_exhaustive(p, 10.0, 1.0, TiltRange{0.0, 20.0});
  ASSERT_EQ(out.trace.size(), 21u);
  EXPECT_EQ(out.evaluations, 21);
  const auto best = std::max_element(out.trace.begin(), out.trace.end(),
                                     [](const auto& a, const auto& b) { return a.ee < b.ee; });
  EXPECT_DOUBLE_EQ(out.theta_opt, best->theta);
  EXPECT_DOUBLE_EQ(out.ee_opt, best->ee);
  EXPECT_NEAR(out.ee_opt, ee_homogeneous(p, 10.0, out.theta_opt, Backend::kExact), 1e-15);
  EXPECT_FALSE(out.r_c_opt.has_value());
}

TEST(Optimize, BisectionStaysInRangeWithinBudget) {
  NetworkParams p;
  for (double lambda : {1e-4, 8e-4}) {
    p.lambda_m = lambda;
    const auto out = optimize_tilt_bisection(p, 10.0, 0.25);
    EXPECT_TRUE(out.range.contains(out.theta_opt));
    EXPECT_LE(out.evaluations, bisection_evaluation_bound(out.range.width(), 0.25));
    EXPECT_EQ(out.method, OptMethod::kBisection);
    // Every midpoint of the shrinking bracket is inside the range.
    for (const auto& t : out.trace) EXPECT_TRUE(out.range.contains(t.theta));
  }
}

TEST(Optimize, BisectionFindsThePeakOfAUnimodalApproximation) {
  // Dense network: the mean-distance objective is single-peaked over the range.
  NetworkParams p;
  p.lambda_m = 8e-4;
  const auto bis = optimize_tilt_bisection(p, 1.0, 0.05);
  const auto r = bis.range;
  double best_theta = r.theta_min, best = -1.0;
  for (double t : grid_points(r.theta_min, r.theta_max, 0.05)) {
    const double v = ee_homogeneous(p, 1.0, t, Backend::kApprox);
    if (v > best) best = v, best_theta = t;
  }
  EXPECT_NEAR(bis.theta_opt, best_theta, 2.0);
}

TEST(Optimize, JointGridRespectsConstraints) {
  NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  const JointGrid grid{2.0, max_sleep_radius(p) / 8};
  const auto out = optimize_hetnet_joint(p, 10.0, 10.0, 0.3, 0.7, grid, Backend::kExact);
  ASSERT_TRUE(out.feasible);
  ASSERT_TRUE(out.r_c_opt.has_value());
  for (const auto& t : out.trace) {
    if (!t.feasible) continue;
    EXPECT_GE(t.macro_coverage, 0.7 - 1e-12);
    EXPECT_GE(t.femto_coverage, 0.3 - 1e-12);
    EXPECT_LE(t.ee, out.ee_opt + 1e-15);
  }
  EXPECT_NEAR(out.ee_opt, ee_hetnet(p, 10.0, 10.0, out.theta_opt, *out.r_c_opt, Backend::kExact), 1e-9 * out.ee_opt);
}

TEST(Optimize, JointGridReportsInfeasibility) {
  NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  const auto out = optimize_hetnet_joint(p, 100.0, 100.0, 0.01, 0.01, {10.0, max_sleep_radius(p) / 2});
  EXPECT_FALSE(out.feasible);
  EXPECT_FALSE(out.warning.empty());
  EXPECT_THROW(optimize_hetnet_joint(p, 10.0, 10.0, 0.0, 0.5), DomainError);
}
