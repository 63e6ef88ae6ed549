#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mmwt/errors.hpp"
#include "mmwt/coverage.hpp"
#include "mmwt/laplace.hpp"

using namespace mmwt;

namespace {

InterferenceTier plain_tier(int m) {
  InterferenceTier t;
  t.density = 1e-4;
  t.gains = horizontal_gain_dist(10.0, -10.0, 30.0, 10.0, -10.0, 90.0);
  t.power = 2.0;
  t.ref_gain = 1e-6;
  t.exponent = 4.0;
  t.fading_m = m;
  return t;
}

// Rayleigh PPP from the origin: A(z) = -pi lambda E[(z P C D)^delta] pi delta / sin(pi delta).
double rayleigh_exponent(const InterferenceTier& t, double z) {
  const double delta = 2.0 / t.exponent;
  double moment = 0.0;
  for (int i = 0; i < 4; ++i) moment += t.gains.probs[i] * std::pow(z * t.power * t.ref_gain * t.gains.values[i], delta);
  return -kPi * t.density * moment * kPi * delta / std::sin(kPi * delta);
}

}  // namespace

TEST(Laplace, UnboundedIntegralClosedForms) {
  for (double alpha : {2.5, 3.0, 4.0}) EXPECT_NEAR(unbounded_interference_integral(alpha, 1), kPi / (alpha * std::sin(2 * kPi / alpha)), 1e-13);
  // m = 2, alpha = 4: Gamma(1/2) Gamma(5/2) / 2 = 3 pi / 8.
  EXPECT_NEAR(unbounded_interference_integral(4.0, 2), 3 * kPi / 8, 1e-13);
}

TEST(Laplace, RayleighTierMatchesClosedForm) {
  const auto tier = plain_tier(1);
  ASSERT_TRUE(tier.has_closed_form());
  LaplaceExponent e({tier});
  const double delta = 0.5;
  for (double z : {1e9, 1e11, 1e12}) {
    std::vector<double> a(5);
    e.scaled_derivatives(z, 0.0, a);
    const double a0 = rayleigh_exponent(tier, z);
    EXPECT_NEAR(a[0], a0, 1e-12 * std::abs(a0));
    double falling = 1.0;
    for (int n = 1; n <= 4; ++n) {
      falling *= delta - (n - 1);
      EXPECT_NEAR(a[n], falling * a0, 1e-12 * std::abs(a0)) << n;
    }
  }
}

TEST(Laplace, ForcedQuadratureAgreesWithClosedForm) {
  for (int m : {1, 3}) {
    LaplaceExponent e({plain_tier(m)});
    LaplaceOptions forced;
    forced.force_quadrature = true;
    forced.quad.rel_tol = 1e-11;
    std::vector<double> a(4), b(4);
    e.scaled_derivatives(1e11, 0.0, a);
    e.scaled_derivatives(1e11, 0.0, b, forced);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(b[n], a[n], 1e-8 * std::abs(a[n])) << "m=" << m << " n=" << n;
  }
}

TEST(Laplace, ExpDerivativeRecursionOnLinearExponent) {
  // A(z) = -c z, so z^l (d/dz)^l e^A = (-c z)^l e^(-c z).
  const double c = 0.7, z = 1.9;
  std::vector<double> a{-c * z, -c * z, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> b(a.size());
  exp_scaled_derivatives(a, b);
  for (std::size_t l = 0; l < b.size(); ++l) EXPECT_NEAR(b[l], std::pow(-c * z, double(l)) * std::exp(-c * z), 1e-14);
}

TEST(Laplace, ExpDerivativeRecursionOnPowerExponent) {
  // A(z) = -c z^(1/2): compare with central differences of exp(A).
  const double c = 0.8, z = 2.0;
  auto f = [&](double x) { return std::exp(-c * std::sqrt(x)); };
  std::vector<double> a(3);
  a[0] = -c * std::sqrt(z);
  a[1] = 0.5 * a[0];
  a[2] = 0.5 * -0.5 * a[0];
  std::vector<double> b(3);
  exp_scaled_derivatives(a, b);
  const double h = 1e-3;
  EXPECT_NEAR(b[1], z * (f(z + h) - f(z - h)) / (2 * h), 1e-7);
  EXPECT_NEAR(b[2], z * z * (f(z + h) - 2 * f(z) + f(z - h)) / (h * h), 1e-5);
}

TEST(Laplace, TiltedDerivativesMatchFiniteDifferences) {
  NetworkParams p;
  const auto e = macro_interference(p, 60.0);
  const double z = 3e7, theta = 8.0;
  const auto d = laplace_derivatives(e, z, theta, 2);
  auto L = [&](double x) { return laplace_value(e, x, theta); };
  const double h = 0.02 * z;
  const double d1 = (L(z - 2 * h) - 8 * L(z - h) + 8 * L(z + h) - L(z + 2 * h)) / (12 * h);
  const double d2 = (-L(z - 2 * h) + 16 * L(z - h) - 30 * L(z) + 16 * L(z + h) - L(z + 2 * h)) / (12 * h * h);
  EXPECT_NEAR(d[0], L(z), 1e-14);
  EXPECT_NEAR(d[1], d1, 1e-4 * std::abs(d1));
  EXPECT_NEAR(d[2], d2, 1e-3 * std::abs(d2));
}

TEST(Laplace, ValueIsAProbabilityTransform) {
  NetworkParams p;
  const auto e = macro_interference(p, 60.0);
  double prev = 1.0;
  for (double z : {0.0, 1e6, 1e7, 1e8, 1e9}) {
    const double v = laplace_value(e, z, 5.0);
    EXPECT_LE(v, prev + 1e-15);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
  EXPECT_DOUBLE_EQ(laplace_value(e, 0.0, 5.0), 1.0);
  EXPECT_THROW(laplace_derivatives(e, 0.0, 5.0, 2), DomainError);
}
