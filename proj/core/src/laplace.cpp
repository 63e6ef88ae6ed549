#include "mmwt/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmwt/errors.hpp"

namespace mmwt {
namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void closed_form_tier(const InterferenceTier& t, double z, std::span<double> a) {
  const double delta = 2.0 / t.exponent;
  const double integral = unbounded_interference_integral(t.exponent, t.fading_m);
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    sum += t.gains.probs[i] * std::pow(z * t.power * t.ref_gain * t.gains.values[i] / t.fading_m, delta);
  const double value = -2.0 * kPi * t.density * sum * integral;
  double falling = 1.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    a[n] += value * falling;
    falling *= delta - static_cast<double>(n);
  }
}

void numeric_tier(const InterferenceTier& t, double z, double theta_tilt, std::span<double> a,
                  const quad::Options& qopt) {
  const std::size_t orders = a.size();
  const int m = t.fading_m;
  std::array<double, 4> coef{};
  double coef_max = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    coef[i] = z * t.power * t.ref_gain * t.gains.values[i] / m;
    coef_max = std::max(coef_max, coef[i]);
  }
  std::vector<double> rising(orders, 1.0);
  for (std::size_t n = 1; n < orders; ++n) rising[n] = rising[n - 1] * (m + static_cast<double>(n) - 1.0);

  const double tilt = theta_tilt;
  const double h_eff = t.pattern.h_eff;
  const double inv_bw = 1.0 / t.pattern.theta_3db;
  const double floor_db = t.pattern.sll_db;
  constexpr double kDeg = 180.0 / kPi;
  const double ln10_10 = std::log(10.0) / 10.0;

  auto integrand = [&](double x, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    if (!(x > 0.0)) return;
    double w = x;
    switch (t.weight) {
      case LinkWeight::kLos: w *= std::exp(-t.beta * x); break;
      case LinkWeight::kNlos: w *= -std::expm1(-t.beta * x); break;
      case LinkWeight::kAll: break;
    }
    double g = std::pow(x, -t.exponent);
    if (t.tilted) {
      const double off = (std::atan(h_eff / x) * kDeg - tilt) * inv_bw;
      g *= std::exp(-ln10_10 * std::min(12.0 * off * off, floor_db));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      const double p = t.gains.probs[i];
      if (p == 0.0) continue;
      const double u = coef[i] * g;
      const double log1p_u = std::log1p(u);
      out[0] += p * -std::expm1(-m * log1p_u);
      if (orders > 1) {
        double term = std::exp(-m * log1p_u);  // (1 + u)^-m
        const double inv = 1.0 / (1.0 + u);
        double upow = 1.0;
        double sign = 1.0;
        for (std::size_t n = 1; n < orders; ++n) {
          term *= inv;
          upow *= u;
          out[n] += p * sign * rising[n] * upow * term;
          sign = -sign;
        }
      }
    }
    for (double& v : out) v *= w;
  };

  // Distance at which the strongest gain value has u = 1; sets the integration scale.
  const double x_star = std::pow(coef_max, 1.0 / t.exponent);
  const double lower = t.lower_limit;
  const double scale = std::max({lower, x_star, 1.0});

  std::vector<double> knots{x_star, 2.0 * std::max(lower, 1.0), 10.0 * scale};
  if (t.tilted) {
    const auto e = pattern_edges(theta_tilt, t.pattern);
    knots.insert(knots.end(), {e.inner, e.boresight, e.outer});
  }
  if (t.weight != LinkWeight::kAll) knots.push_back(lower + 1.0 / t.beta);

  std::vector<double> result(orders);
  quad::integrate_to_infinity(integrand, lower, scale, std::span<const double>(knots), std::span(result), qopt);
  for (std::size_t n = 0; n < orders; ++n) a[n] += -2.0 * kPi * t.density * result[n];
}

}  // namespace

double unbounded_interference_integral(double alpha, int m) {
  if (!(alpha > 2.0)) throw DomainError("interference integral diverges for alpha <= 2");
  const double delta = 2.0 / alpha;
  return std::tgamma(1.0 - delta) * std::tgamma(m + delta) / (2.0 * std::tgamma(static_cast<double>(m)));
}

void LaplaceExponent::scaled_derivatives(double z, double theta_tilt, std::span<double> a,
                                         const LaplaceOptions& opt) const {
  if (!(z >= 0.0)) throw DomainError("Laplace transform argument must be nonnegative");
  std::fill(a.begin(), a.end(), 0.0);
  if (z == 0.0 || a.empty()) return;
  for (const auto& t : tiers_) {
    if (t.density <= 0.0) continue;
    if (t.fading_m < 1) throw DomainError("interference tier: fading shape must be >= 1");
    if (t.has_closed_form() && !opt.force_quadrature)
      closed_form_tier(t, z, a);
    else
      numeric_tier(t, z, theta_tilt, a, opt.quad);
  }
}

void exp_scaled_derivatives(std::span<const double> a, std::span<double> b) {
  if (a.size() != b.size()) throw DomainError("exp_scaled_derivatives: size mismatch");
  if (a.empty()) return;
  b[0] = std::exp(a[0]);
  for (std::size_t l = 1; l < b.size(); ++l) {
    double acc = 0.0;
    for (std::size_t j = 0; j < l; ++j)
      acc += binomial(static_cast<int>(l - 1), static_cast<int>(j)) * a[j + 1] * b[l - 1 - j];
    b[l] = acc;
  }
}

double laplace_value(const LaplaceExponent& exponent, double z, double theta_tilt, const LaplaceOptions& opt) {
  double a0 = 0.0;
  exponent.scaled_derivatives(z, theta_tilt, std::span(&a0, 1), opt);
  return std::exp(a0);
}

std::vector<double> laplace_derivatives(const LaplaceExponent& exponent, double z, double theta_tilt, int max_order,
                                        const LaplaceOptions& opt) {
  if (max_order < 0) throw DomainError("laplace_derivatives: negative order");
  if (max_order > kMaxLaplaceOrder)
    throw UnsupportedError("laplace_derivatives: orders above " + std::to_string(kMaxLaplaceOrder) + " not supported");
  if (max_order > 0 && !(z > 0.0)) throw DomainError("laplace_derivatives: z must be positive for derivatives");
  const auto n = static_cast<std::size_t>(max_order) + 1;
  std::vector<double> a(n), b(n);
  exponent.scaled_derivatives(z, theta_tilt, a, opt);
  exp_scaled_derivatives(a, b);
  double zpow = 1.0;
  for (std::size_t l = 0; l < n; ++l) {
    b[l] /= zpow;
    zpow *= z;
  }
  return b;
}

}  // namespace mmwt
