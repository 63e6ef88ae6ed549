#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mmwt/errors.hpp"
#include "mmwt/coverage.hpp"

using namespace mmwt;

namespace {

// Single-slope PPP, unit antenna gains, Rayleigh fading, no noise:
// P = 1 / (1 + sqrt(g) (pi/2 - atan(1/sqrt(g)))) for path-loss exponent 4.
double classical_alpha4(double gamma) {
  const double s = std::sqrt(gamma);
  return 1.0 / (1.0 + s * (kPi / 2 - std::atan(1.0 / s)));
}

NetworkParams classical_params() {
  NetworkParams p;
  p.path_loss.alpha_los = 4.0;
  p.path_loss.alpha_nlos = 4.0;
  p.path_loss.c_nlos = p.path_loss.c_los;
  p.macro_tx = {0.0, 0.0, 30.0};
  p.macro_rx = {0.0, 0.0, 90.0};
  p.vertical_pattern = false;
  p.sigma2 = 0.0;
  return p;
}

NetworkParams hetnet_params() {
  NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  return p;
}

}  // namespace

TEST(Coverage, ClassicalInterferenceLimitedPpp) {
  const auto p = classical_params();
  for (double g_db : {-10.0, 0.0, 10.0, 20.0}) {
    const double g = db_to_linear(g_db);
    EXPECT_NEAR(coverage_homogeneous(p, g, 0.0).value, classical_alpha4(g), 2e-5) << g_db;
  }
}

TEST(Coverage, ClassicalResultIsDensityInvariant) {
  auto p = classical_params();
  p.lambda_m = 1e-3;
  EXPECT_NEAR(coverage_homogeneous(p, 1.0, 0.0).value, classical_alpha4(1.0), 2e-5);
}

TEST(Coverage, NakagamiKernelRayleighCase) {
  const std::vector<double> b{0.4};
  EXPECT_NEAR(nakagami_coverage(1, 0.3, b), std::exp(-0.3) * 0.4, 1e-15);
  // m = 2: e^-v (b0 + v b0 - b1).
  const std::vector<double> b2{0.4, -0.1};
  EXPECT_NEAR(nakagami_coverage(2, 0.3, b2), std::exp(-0.3) * (0.4 + 0.3 * 0.4 + 0.1), 1e-15);
}

TEST(Coverage, MonotoneInThreshold) {
  NetworkParams p;
  for (int m : {1, 3}) {
    p.fading.nakagami_m = m;
    double prev = 1.0;
    for (double g_db = -10; g_db <= 20; g_db += 5) {
      const double c = coverage_homogeneous(p, db_to_linear(g_db), 5.0).value;
      EXPECT_LE(c, prev + 1e-9);
      EXPECT_GE(c, 0.0);
      prev = c;
    }
  }
}

TEST(Coverage, ApproxIsConditionalCoverageAtMeanDistance) {
  NetworkParams p;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  double cond = 0.0;
  const double r_c = 0.0;
  macro_conditional_coverage(p, 10.0, 6.0, d.mean(), std::span(&r_c, 1), std::span(&cond, 1));
  EXPECT_NEAR(coverage_homogeneous_approx(p, 10.0, 6.0).value, cond, 1e-12);
  EXPECT_EQ(coverage_homogeneous_approx(p, 10.0, 6.0).method, CoverageMethod::kTaylorApprox);
}

TEST(Coverage, SparseFemtoTierReducesToHomogeneous) {
  auto p = hetnet_params();
  p.lambda_f = 1e-12;
  const double hom = coverage_homogeneous(p, 3.0, 5.0).value;
  EXPECT_NEAR(coverage_macro_hetnet(p, 3.0, 5.0, 0.0).value, hom, 1e-6);
}

TEST(Coverage, SweepsMatchPointwiseEvaluation) {
  const auto p = hetnet_params();
  const std::vector<double> r_cs{0.0, 20.0, max_sleep_radius(p)};
  const auto macro = coverage_macro_hetnet_sweep(p, 10.0, 5.0, r_cs);
  const auto femto = coverage_femto_sweep(p, 10.0, 5.0, r_cs);
  const auto approx = coverage_hetnet_approx_sweep(p, 10.0, 10.0, 5.0, r_cs);
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    EXPECT_NEAR(macro[j].value, coverage_macro_hetnet(p, 10.0, 5.0, r_cs[j]).value, 1e-9);
    EXPECT_NEAR(femto[j].value, coverage_femto(p, 10.0, 5.0, r_cs[j]).value, 1e-9);
    const auto a = coverage_hetnet_approx(p, 10.0, 10.0, 5.0, r_cs[j]);
    EXPECT_NEAR(approx[j].macro.value, a.macro.value, 1e-12);
    EXPECT_NEAR(approx[j].femto.value, a.femto.value, 1e-12);
  }
}

TEST(Coverage, SleepRadiusTradesFemtoForMacroCoverage) {
  const auto p = hetnet_params();
  const double rmax = max_sleep_radius(p);
  const double m0 = coverage_macro_hetnet(p, 10.0, 5.0, 0.0).value;
  const double m1 = coverage_macro_hetnet(p, 10.0, 5.0, rmax).value;
  const double f0 = coverage_femto(p, 10.0, 5.0, 0.0).value;
  const double f1 = coverage_femto(p, 10.0, 5.0, rmax).value;
  EXPECT_GE(m1, m0);
  EXPECT_LT(f1, f0);
  // Only FBSs outside every sleep disc serve; at the largest radius that is a fraction 1/e.
  EXPECT_LE(f1, std::exp(-1.0) + 1e-12);
}

TEST(Coverage, FemtoLowerBoundWithoutNoise) {
  auto p = hetnet_params();
  p.sigma2 = 0.0;
  for (double r_c : {0.0, 40.0, max_sleep_radius(p)}) {
    for (double g_db : {0.0, 10.0}) {
      const double g = db_to_linear(g_db);
      const auto lb = coverage_femto_lower_bound(p, g, r_c);
      EXPECT_EQ(lb.method, CoverageMethod::kLowerBound);
      EXPECT_LE(lb.value, coverage_femto(p, g, 5.0, r_c).value + 1e-9);
      EXPECT_GT(lb.value, 0.0);
    }
  }
}

TEST(Coverage, LowerBoundDecaysSlowerThanActiveFraction) {
  // Sleeping FBSs lower the femto interference, so the bound shrinks by less than the active fraction.
  const auto p = hetnet_params();
  const double r = 50.0;
  const double ratio = coverage_femto_lower_bound(p, 5.0, r).value / coverage_femto_lower_bound(p, 5.0, 0.0).value;
  EXPECT_GT(ratio, std::exp(-kPi * p.lambda_m * r * r));
  EXPECT_LT(ratio, 1.0);
  auto q = p;
  q.lambda_f = 1e-12;  // no femto interference: pure active-fraction scaling
  const double pure = coverage_femto_lower_bound(q, 5.0, r).value / coverage_femto_lower_bound(q, 5.0, 0.0).value;
  EXPECT_NEAR(pure, std::exp(-kPi * p.lambda_m * r * r), 1e-9);
}

TEST(Coverage, InvalidInputsThrow) {
  const auto p = hetnet_params();
  EXPECT_THROW(coverage_femto(p, 1.0, 5.0, 2 * max_sleep_radius(p)), DomainError);
  EXPECT_THROW(coverage_homogeneous(p, -1.0, 5.0), DomainError);
  EXPECT_THROW(coverage_homogeneous(p, 1.0, 95.0), DomainError);
}

TEST(Coverage, ShallowNlosExponentStaysFinite) {
  // Interference tails decaying like x^-1.5 once made the quadrature land on its endpoint.
  auto p = hetnet_params();
  p.path_loss.alpha_los = 2.353;
  p.path_loss.alpha_nlos = 2.509;
  p.path_loss.c_nlos = db_to_linear(-73.16);
  p.sigma2 = 0.0;
  const double c = coverage_femto(p, 0.567, 2.465, 20.0).value;
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GT(c, 0.0);
}
