#include <gtest/gtest.h>

#include <cmath>

#include "mmwt/errors.hpp"
#include "mmwt/energy.hpp"

using namespace mmwt;

TEST(Energy, MacroOnlyEfficiencyAtFullCoverage) {
  NetworkParams p;  // 68.73 W circuit power, 3.77 x 20 W transmit chain
  EXPECT_NEAR(macro_power(p), 144.13, 1e-12);
  EXPECT_NEAR(ee_homogeneous_from_coverage(p, 1.0, 1.0), 1.0 / 144.13, 1e-15);
  EXPECT_NEAR(ee_homogeneous_from_coverage(p, 0.5, 3.0), 0.5 * 2.0 / 144.13, 1e-15);
  EXPECT_DOUBLE_EQ(ee_homogeneous_from_coverage(p, 0.7, 0.0), 0.0);
  EXPECT_THROW(rate_factor(-0.1), DomainError);
}

TEST(Energy, TwoTierEfficiencyWeighsTiersByDensity) {
  NetworkParams p;
  p.lambda_m = 1e-5;
  p.lambda_f = 1e-4;
  const double power = 1e-5 * 144.13 + 1e-4 * (9.6 + 4.0 * 0.1);
  EXPECT_NEAR(hetnet_power_density(p), power, 1e-18);
  const double rate = 1e-5 * 0.8 * std::log2(1 + 10.0) + 1e-4 * 0.6 * std::log2(1 + 3.0);
  EXPECT_NEAR(ee_hetnet_from_coverage(p, 0.8, 0.6, 10.0, 3.0), rate / power, 1e-12);
}

TEST(Energy, TwoTierFallsBackWithoutFemtocells) {
  NetworkParams p;
  EXPECT_DOUBLE_EQ(ee_hetnet(p, 10.0, 10.0, 5.0, 0.0, Backend::kExact),
                   ee_homogeneous(p, 10.0, 5.0, Backend::kExact));
}

TEST(Energy, BackendNames) {
  EXPECT_EQ(parse_backend("exact"), Backend::kExact);
  EXPECT_EQ(parse_backend("approx"), Backend::kApprox);
  EXPECT_EQ(to_string(Backend::kApprox), "approx");
  EXPECT_THROW(parse_backend("fast"), DomainError);
}

TEST(Energy, TiltRangeFromDistances) {
  VerticalPattern pat;  // theta0 = 6 sqrt(20/12) = 7.746 deg, h = 10 m
  const auto r = tilt_range_from_distances(pat, 100.0, 100.0);
  const double elev = std::atan(0.1) * 180.0 / kPi;
  EXPECT_NEAR(elev, 5.7106, 1e-4);
  EXPECT_DOUBLE_EQ(r.theta_min, 0.0);
  EXPECT_NEAR(r.theta_max, 13.457, 1e-3);
  const auto near = tilt_range_from_distances(pat, 2.0, 5.0);
  EXPECT_NEAR(near.theta_min, std::atan(2.0) * 180.0 / kPi - 7.745966692414834, 1e-12);
  EXPECT_DOUBLE_EQ(tilt_range_from_distances(pat, 0.1, 0.1).theta_max, 90.0);
  EXPECT_THROW(tilt_range_from_distances(pat, 5.0, 2.0), DomainError);
}

TEST(Energy, GeneralTiltRangeContainsDenseRange) {
  NetworkParams p;
  for (double lambda : {1e-5, 1e-4, 1e-3}) {
    p.lambda_m = lambda;
    const auto dense = tilt_range(p, 0.1, TiltRangeMode::kDense);
    const auto general = tilt_range(p, 0.1, TiltRangeMode::kGeneral);
    EXPECT_LE(general.theta_min, dense.theta_min);
    EXPECT_GE(general.theta_max, dense.theta_max);
    EXPECT_NEAR(dense.width(), std::min(dense.theta_max, 2 * p.vertical.main_lobe_halfwidth()), 1e-9);
  }
  EXPECT_THROW(tilt_range(p, 0.0), DomainError);
}
