#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mmwt/errors.hpp"
#include "mmwt/distance.hpp"
#include "mmwt/params.hpp"

using namespace mmwt;

namespace {

// Void probability of the LOS and NLOS processes written out directly.
double ccdf_oracle(const PathLossModel& m, double lambda, double r) {
  const double mu = std::pow(m.c_nlos / m.c_los, 1.0 / m.alpha_nlos);
  const double a = mu * std::pow(r, m.alpha_los / m.alpha_nlos);
  auto los_part = [&](double x) { return (1.0 - (1.0 + m.beta * x) * std::exp(-m.beta * x)) / (m.beta * m.beta); };
  return std::exp(-2.0 * kPi * lambda * (los_part(r) + a * a / 2.0 - los_part(a)));
}

// Composite Simpson on [0, b] with n (even) panels; f(0) is taken as 0.
template <typename F>
double simpson(F f, double b, int n) {
  const double h = b / n;
  double s = f(b);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST(Distance, EquivalentDistanceMapInverts) {
  const PathLossModel m{1e-6, 2e-7, 2.5, 4.0, 0.003};
  const auto map = EquivalentDistanceMap::from(m);
  EXPECT_NEAR(map.kappa, 2.5 / 4.0, 1e-15);
  EXPECT_NEAR(map.mu, std::pow(0.2, 0.25), 1e-14);
  for (double r : {0.5, 10.0, 300.0}) {
    EXPECT_NEAR(map.r_eq(map.r_eq_inv(r)), r, 1e-10 * r);
    // Same received power over the NLOS and the LOS link.
    const double x = map.r_eq_inv(r);
    EXPECT_NEAR(m.c_nlos * std::pow(x, -4.0), m.c_los * std::pow(r, -2.5), 1e-12 * m.c_los * std::pow(r, -2.5));
  }
}

TEST(Distance, VoidFactorsSmallArgument) {
  for (double x : {1e-8, 1e-4, 0.5, 3.0}) {
    EXPECT_NEAR(los_void_factor(x), 1.0 - (1.0 + x) * std::exp(-x), 1e-15 + 1e-9 * x * x);
    EXPECT_GT(los_void_factor(x), 0.0);
    EXPECT_GT(nlos_void_factor(x), 0.0);
  }
  EXPECT_NEAR(los_void_factor(1e-8), 5e-17, 1e-24);
  EXPECT_NEAR(nlos_void_factor(1e-6), 1e-18 / 3.0 - 1e-24 / 8.0, 1e-30);  // x^3/3 - x^4/8 + ...
}

TEST(Distance, CcdfMatchesDirectVoidProbability) {
  for (double beta : {0.003, 0.006}) {
    NetworkParams p;
    p.path_loss.beta = beta;
    ServingDistanceDist d(p.path_loss, p.lambda_m);
    for (double r : {1.0, 20.0, 60.0, 150.0, 400.0}) EXPECT_NEAR(d.ccdf(r), ccdf_oracle(p.path_loss, p.lambda_m, r), 1e-12);
  }
}

TEST(Distance, PdfIsNegativeCcdfSlope) {
  NetworkParams p;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  for (double r : {5.0, 40.0, 90.0, 250.0}) {
    const double h = 1e-2;
    const double slope = (ccdf_oracle(p.path_loss, p.lambda_m, r + h) - ccdf_oracle(p.path_loss, p.lambda_m, r - h)) / (2 * h);
    EXPECT_NEAR(d.pdf(r), -slope, 1e-6 * std::abs(slope) + 1e-12);
  }
}

TEST(Distance, PdfIntegratesToOneAndMeanMatches) {
  NetworkParams p;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  const double b = d.tail_radius(1e-12);
  EXPECT_NEAR(simpson([&](double r) { return d.pdf(r); }, b, 20000), 1.0, 1e-6);
  // E[R] = int ccdf; the ccdf starts at 1, so add the first panel's missing f(0) h / 3.
  const double mean = simpson([&](double r) { return ccdf_oracle(p.path_loss, p.lambda_m, r); }, b, 20000) + b / 20000 / 3;
  EXPECT_NEAR(d.mean(), mean, 1e-6 * mean);
}

TEST(Distance, QuantilesAndTail) {
  NetworkParams p;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  const auto [r0, r1] = d.quantile_bounds(0.1);
  EXPECT_NEAR(d.ccdf(r0), 0.95, 1e-6);
  EXPECT_NEAR(d.ccdf(r1), 0.05, 1e-6);
  EXPECT_LT(r0, d.mean());
  EXPECT_GT(r1, d.mean());
  EXPECT_LE(d.ccdf(d.tail_radius(1e-6)), 1e-6 * (1 + 1e-6));
  EXPECT_NEAR(d.ccdf(d.ccdf_inverse(0.3)), 0.3, 1e-6);
}

TEST(Distance, RayleighLimitWithoutBlockage) {
  NetworkParams p;
  p.path_loss.beta = 1e-9;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  for (double r : {10.0, 50.0, 120.0}) EXPECT_NEAR(d.ccdf(r), std::exp(-kPi * p.lambda_m * r * r), 1e-6);
  EXPECT_NEAR(d.mean(), 0.5 / std::sqrt(p.lambda_m), 1e-3 * d.mean());
}

TEST(Distance, FemtoLinkLaw) {
  EXPECT_NEAR(femto_distance_pdf(15.0, 30.0), 2 * 15.0 / 900.0, 1e-15);
  EXPECT_EQ(femto_distance_pdf(31.0, 30.0), 0.0);
  EXPECT_NEAR(femto_mean_distance(30.0), 20.0, 1e-15);
  EXPECT_NEAR(simpson([](double r) { return femto_distance_pdf(r, 30.0); }, 30.0, 100), 1.0, 1e-12);
}

TEST(Distance, ExpectationAgreesWithSimpson) {
  NetworkParams p;
  ServingDistanceDist d(p.path_loss, p.lambda_m);
  std::vector<double> res(2);
  d.expect([](double r, std::span<double> out) {
             out[0] = 1.0;
             out[1] = r * r;
           },
           res, quad::Options{1e-10, 0.0, 4000, true}, {}, 1e-12);
  const double b = d.tail_radius(1e-12);
  const double second = simpson([&](double r) { return r * r * d.pdf(r); }, b, 40000);
  EXPECT_NEAR(res[0], 1.0, 1e-8);
  EXPECT_NEAR(res[1], second, 1e-6 * second);
}
