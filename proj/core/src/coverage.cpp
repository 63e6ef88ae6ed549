#include "mmwt/coverage.hpp"

#include <array>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "mmwt/errors.hpp"

namespace mmwt {
namespace {

// Below this the conditional coverage is indistinguishable from an underflow.
constexpr double kNegligible = 1e-300;

using Orders = std::array<double, kMaxLaplaceOrder + 1>;

int checked_shape(const NetworkParams& p) {
  const int m = p.fading.nakagami_m;
  if (m < 1) throw DomainError("Nakagami shape must be >= 1");
  if (m - 1 > kMaxLaplaceOrder)
    throw UnsupportedError("Nakagami shape above " + std::to_string(kMaxLaplaceOrder + 1) + " not supported");
  return m;
}

std::vector<double> serving_knots(const NetworkParams& p, double theta_tilt) {
  if (!p.vertical_pattern) return {};
  const auto e = pattern_edges(theta_tilt, p.vertical);
  return {e.inner, e.boresight, e.outer};
}

void check_threshold(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("SINR threshold must be positive (linear)");
}

void check_tilt(double theta_tilt) {
  if (!(theta_tilt >= 0.0 && theta_tilt <= 90.0)) throw DomainError("tilt outside [0, 90] degrees");
}

NetworkParams without_femto(NetworkParams p) {
  p.lambda_f = 0.0;
  return p;
}

}  // namespace

std::string_view to_string(CoverageMethod m) {
  switch (m) {
    case CoverageMethod::kExactAnalytic: return "exact-analytic";
    case CoverageMethod::kTaylorApprox: return "taylor-approx";
    case CoverageMethod::kLowerBound: return "lower-bound";
    case CoverageMethod::kMonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

LaplaceExponent macro_interference(const NetworkParams& p, double rho) {
  const auto& pl = p.path_loss;
  InterferenceTier los;
  los.density = p.lambda_m;
  los.gains = p.macro_gain();
  los.power = p.p_m;
  los.ref_gain = pl.c_los;
  los.exponent = pl.alpha_los;
  los.weight = LinkWeight::kLos;
  los.beta = pl.beta;
  los.lower_limit = rho;
  los.fading_m = p.fading.nakagami_m;
  los.tilted = p.vertical_pattern;
  los.pattern = p.vertical;

  InterferenceTier nlos = los;
  nlos.ref_gain = pl.c_nlos;
  nlos.exponent = pl.alpha_nlos;
  nlos.weight = LinkWeight::kNlos;
  nlos.lower_limit = EquivalentDistanceMap::from(pl).r_eq_inv(rho);
  return LaplaceExponent({los, nlos});
}

InterferenceTier femto_to_macro_tier(const NetworkParams& p, double r_c) {
  InterferenceTier t;
  t.density = active_femto_density(p, r_c);
  t.gains = p.cross_fm_gain();
  t.power = p.p_f * p.ell_w;
  t.ref_gain = p.path_loss.c_nlos;
  t.exponent = p.path_loss.alpha_nlos;
  t.weight = LinkWeight::kAll;
  t.lower_limit = 0.0;
  t.fading_m = 1;
  return t;
}

InterferenceTier macro_to_femto_tier(const NetworkParams& p) {
  InterferenceTier t;
  t.density = p.lambda_m;
  t.gains = p.cross_mf_gain();
  t.power = p.p_m * p.ell_w;
  t.ref_gain = p.path_loss.c_nlos;
  t.exponent = p.path_loss.alpha_nlos;
  t.weight = LinkWeight::kAll;
  t.lower_limit = 0.0;
  t.fading_m = 1;
  t.tilted = p.vertical_pattern;
  t.pattern = p.vertical;
  return t;
}

InterferenceTier femto_to_femto_tier(const NetworkParams& p, double r_c, double lower) {
  InterferenceTier t;
  t.density = active_femto_density(p, r_c);
  t.gains = p.femto_gain();
  t.power = p.p_f * p.ell_w * p.ell_w;
  t.ref_gain = p.path_loss.c_nlos;
  t.exponent = p.path_loss.alpha_nlos;
  t.weight = LinkWeight::kAll;
  t.lower_limit = lower;
  t.fading_m = 1;
  return t;
}

double nakagami_coverage(int m, double v, std::span<const double> b) {
  if (static_cast<int>(b.size()) < m) throw DomainError("nakagami_coverage: need m scaled derivatives");
  double total = 0.0;
  double inv_fact = 1.0;
  for (int k = 0; k < m; ++k) {
    if (k > 0) inv_fact /= k;
    double inner = 0.0;
    double binom = 1.0;
    for (int l = 0; l <= k; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      inner += binom * std::pow(v, k - l) * sign * b[static_cast<std::size_t>(l)];
      binom = binom * (k - l) / (l + 1);
    }
    total += inv_fact * inner;
  }
  return std::clamp(std::exp(-v) * total, 0.0, 1.0);
}

void macro_conditional_coverage(const NetworkParams& p, double gamma, double theta_tilt, double rho,
                                std::span<const double> r_cs, std::span<double> out, const CoverageOptions& opt) {
  if (out.size() != r_cs.size()) throw DomainError("macro_conditional_coverage: size mismatch");
  const int m = checked_shape(p);
  const auto& pl = p.path_loss;
  const double g0 = p.elevation_gain(rho, theta_tilt);
  const double s = gamma * std::pow(rho, pl.alpha_los) / (p.p_m * pl.c_los * p.macro_gain().aligned() * g0);
  const double z = m * s;
  const double v = z * p.sigma2;

  // Noise alone already caps the coverage at the fading CCDF.
  if (nakagami_ccdf(s * p.sigma2, m) < kNegligible) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }

  const auto orders = static_cast<std::size_t>(m);
  Orders a{}, af{}, work{}, b{};
  macro_interference(p, rho).scaled_derivatives(z, theta_tilt, std::span(a).first(orders), opt.laplace);
  if (p.lambda_f > 0.0) {
    LaplaceExponent femto({femto_to_macro_tier(p, 0.0)});
    femto.scaled_derivatives(z, theta_tilt, std::span(af).first(orders), opt.laplace);
  }
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    const double thin = p.lambda_f > 0.0 ? std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]) : 0.0;
    for (std::size_t n = 0; n < orders; ++n) work[n] = a[n] + thin * af[n];
    exp_scaled_derivatives(std::span(work).first(orders), std::span(b).first(orders));
    out[j] = nakagami_coverage(m, v, std::span(b).first(orders));
  }
}

CoverageResult coverage_homogeneous(const NetworkParams& p, double gamma, double theta_tilt,
                                    const CoverageOptions& opt) {
  const double r_c = 0.0;
  auto res = coverage_macro_hetnet_sweep(without_femto(p), gamma, theta_tilt, std::span(&r_c, 1), opt);
  return res.front();
}

CoverageResult coverage_macro_hetnet(const NetworkParams& p, double gamma_m, double theta_tilt, double r_c,
                                     const CoverageOptions& opt) {
  return coverage_macro_hetnet_sweep(p, gamma_m, theta_tilt, std::span(&r_c, 1), opt).front();
}

std::vector<CoverageResult> coverage_macro_hetnet_sweep(const NetworkParams& p, double gamma_m, double theta_tilt,
                                                        std::span<const double> r_cs, const CoverageOptions& opt) {
  p.validate();
  check_threshold(gamma_m);
  check_tilt(theta_tilt);
  for (double r_c : r_cs) check_sleep_radius(p, r_c);

  const ServingDistanceDist dist(p.path_loss, p.lambda_m);
  std::vector<double> values(r_cs.size());
  const auto knots = serving_knots(p, theta_tilt);
  dist.expect(
      [&](double rho, std::span<double> out) { macro_conditional_coverage(p, gamma_m, theta_tilt, rho, r_cs, out, opt); },
      std::span(values), opt.outer, knots, opt.tail_mass);

  std::vector<CoverageResult> res;
  for (double v : values) res.push_back({std::clamp(v, 0.0, 1.0), CoverageMethod::kExactAnalytic, 0.0});
  return res;
}

void femto_conditional_coverage(const NetworkParams& p, double gamma_f, double theta_tilt, double rho,
                                double ff_lower, std::span<const double> r_cs, std::span<double> out,
                                const CoverageOptions& opt) {
  if (out.size() != r_cs.size()) throw DomainError("femto_conditional_coverage: size mismatch");
  const auto& pl = p.path_loss;
  const double s = gamma_f * std::pow(rho, pl.alpha_los) / (p.p_f * pl.c_los * p.femto_gain().aligned());
  const double noise = std::exp(-s * p.sigma2);
  if (noise < kNegligible) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  double a_mf = 0.0, a_ff = 0.0;
  LaplaceExponent({macro_to_femto_tier(p)}).scaled_derivatives(s, theta_tilt, std::span(&a_mf, 1), opt.laplace);
  if (p.lambda_f > 0.0)
    LaplaceExponent({femto_to_femto_tier(p, 0.0, ff_lower)})
        .scaled_derivatives(s, theta_tilt, std::span(&a_ff, 1), opt.laplace);
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    const double thin = std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]);
    out[j] = noise * std::exp(a_mf + thin * a_ff);
  }
}

CoverageResult coverage_femto(const NetworkParams& p, double gamma_f, double theta_tilt, double r_c,
                              const CoverageOptions& opt) {
  return coverage_femto_sweep(p, gamma_f, theta_tilt, std::span(&r_c, 1), opt).front();
}

std::vector<CoverageResult> coverage_femto_sweep(const NetworkParams& p, double gamma_f, double theta_tilt,
                                                 std::span<const double> r_cs, const CoverageOptions& opt) {
  p.validate();
  check_threshold(gamma_f);
  check_tilt(theta_tilt);
  for (double r_c : r_cs) check_sleep_radius(p, r_c);

  const double rf = p.r_f;
  std::vector<double> values(r_cs.size());
  const double knots[] = {0.0, 0.25 * rf, 0.5 * rf, rf};
  quad::integrate(
      [&](double rho, std::span<double> out) {
        femto_conditional_coverage(p, gamma_f, theta_tilt, rho, rho, r_cs, out, opt);
        const double w = femto_distance_pdf(rho, rf);
        for (double& v : out) v *= w;
      },
      std::span<const double>(knots), std::span(values), opt.outer);

  std::vector<CoverageResult> res;
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    const double active = std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]);
    res.push_back({std::clamp(active * values[j], 0.0, 1.0), CoverageMethod::kExactAnalytic, 0.0});
  }
  return res;
}

CoverageResult coverage_femto_lower_bound(const NetworkParams& p, double gamma_f, double r_c) {
  p.validate();
  check_threshold(gamma_f);
  check_sleep_radius(p, r_c);
  const auto& pl = p.path_loss;
  const double delta = 2.0 / pl.alpha_nlos;
  const double shape = pl.alpha_nlos / pl.alpha_los;
  const double k = unbounded_interference_integral(pl.alpha_nlos, 1);
  const double d0f = p.femto_gain().aligned();

  const double c1 = 2.0 * kPi * p.lambda_m *
                    std::pow(gamma_f * p.p_m * p.ell_w * pl.c_nlos / (p.p_f * pl.c_los * d0f), delta) * k *
                    p.cross_mf_gain().moment(delta);
  const double c2 = 2.0 * kPi * active_femto_density(p, r_c) *
                    std::pow(gamma_f * p.ell_w * p.ell_w * pl.c_nlos / (pl.c_los * d0f), delta) * k *
                    p.femto_gain().moment(delta);
  const double c = c1 + c2;
  double c0 = 1.0;
  if (c > 0.0) {
    const double x = c * std::pow(p.r_f, 2.0 / shape);
    c0 = shape / (p.r_f * p.r_f * std::pow(c, shape)) * boost::math::tgamma_lower(shape, x);
  }
  const double value = c0 * std::exp(-kPi * p.lambda_m * r_c * r_c);
  return {std::clamp(value, 0.0, 1.0), CoverageMethod::kLowerBound, 0.0};
}

CoverageResult coverage_homogeneous_approx(const NetworkParams& p, double gamma, double theta_tilt,
                                           const CoverageOptions& opt) {
  p.validate();
  check_threshold(gamma);
  check_tilt(theta_tilt);
  const auto q = without_femto(p);
  const double rho_bar = ServingDistanceDist(q.path_loss, q.lambda_m).mean();
  const double r_c = 0.0;
  double value = 0.0;
  macro_conditional_coverage(q, gamma, theta_tilt, rho_bar, std::span(&r_c, 1), std::span(&value, 1), opt);
  return {value, CoverageMethod::kTaylorApprox, 0.0};
}

HetNetCoverage coverage_hetnet_approx(const NetworkParams& p, double gamma_m, double gamma_f, double theta_tilt,
                                      double r_c, const CoverageOptions& opt) {
  return coverage_hetnet_approx_sweep(p, gamma_m, gamma_f, theta_tilt, std::span(&r_c, 1), opt).front();
}

std::vector<HetNetCoverage> coverage_hetnet_approx_sweep(const NetworkParams& p, double gamma_m, double gamma_f,
                                                         double theta_tilt, std::span<const double> r_cs,
                                                         const CoverageOptions& opt) {
  p.validate();
  check_threshold(gamma_m);
  check_threshold(gamma_f);
  check_tilt(theta_tilt);
  for (double r_c : r_cs) check_sleep_radius(p, r_c);
  const double rho_bar = ServingDistanceDist(p.path_loss, p.lambda_m).mean();
  const double g_bar = femto_mean_distance(p.r_f);

  std::vector<double> macro(r_cs.size()), femto(r_cs.size());
  macro_conditional_coverage(p, gamma_m, theta_tilt, rho_bar, r_cs, std::span(macro), opt);
  femto_conditional_coverage(p, gamma_f, theta_tilt, g_bar, g_bar, r_cs, std::span(femto), opt);
  std::vector<HetNetCoverage> out(r_cs.size());
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    out[j].macro = {std::clamp(macro[j], 0.0, 1.0), CoverageMethod::kTaylorApprox, 0.0};
    const double active = std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]);
    out[j].femto = {std::clamp(active * femto[j], 0.0, 1.0), CoverageMethod::kTaylorApprox, 0.0};
  }
  return out;
}

}  // namespace mmwt
