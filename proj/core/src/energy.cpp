#include "mmwt/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmwt/distance.hpp"
#include "mmwt/errors.hpp"

namespace mmwt {

std::string_view to_string(Backend b) { return b == Backend::kExact ? "exact" : "approx"; }

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::kExact;
  if (name == "approx") return Backend::kApprox;
  throw DomainError("unknown backend '" + std::string(name) + "' (exact|approx)");
}

double rate_factor(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("SINR threshold must be non-negative");
  return std::log2(1.0 + gamma);
}

double macro_power(const NetworkParams& p) { return p.p_cm + p.eta_m * p.p_m; }

double hetnet_power_density(const NetworkParams& p) {
  return p.lambda_m * macro_power(p) + p.lambda_f * (p.p_cf + p.eta_f * p.p_f);
}

double ee_homogeneous_from_coverage(const NetworkParams& p, double coverage, double gamma) {
  const double power = macro_power(p);
  if (!(power > 0.0)) throw DomainError("consumed power must be positive");
  return coverage * rate_factor(gamma) / power;
}

double ee_homogeneous(const NetworkParams& p, double gamma, double theta_tilt, Backend backend,
                      const CoverageOptions& opt) {
  const auto cov = backend == Backend::kExact ? coverage_homogeneous(p, gamma, theta_tilt, opt)
                                              : coverage_homogeneous_approx(p, gamma, theta_tilt, opt);
  return ee_homogeneous_from_coverage(p, cov.value, gamma);
}

double ee_hetnet_from_coverage(const NetworkParams& p, double macro_coverage, double femto_coverage,
                               double gamma_m, double gamma_f) {
  const double power = hetnet_power_density(p);
  if (!(power > 0.0)) throw DomainError("consumed power density must be positive");
  const double rate = p.lambda_m * macro_coverage * rate_factor(gamma_m) +
                      (p.lambda_f > 0.0 ? p.lambda_f * femto_coverage * rate_factor(gamma_f) : 0.0);
  return rate / power;
}

double ee_hetnet(const NetworkParams& p, double gamma_m, double gamma_f, double theta_tilt, double r_c,
                 Backend backend, const CoverageOptions& opt) {
  if (p.lambda_f <= 0.0) return ee_homogeneous(p, gamma_m, theta_tilt, backend, opt);
  if (backend == Backend::kExact) {
    const double macro = coverage_macro_hetnet(p, gamma_m, theta_tilt, r_c, opt).value;
    const double femto = coverage_femto(p, gamma_f, theta_tilt, r_c, opt).value;
    return ee_hetnet_from_coverage(p, macro, femto, gamma_m, gamma_f);
  }
  const auto cov = coverage_hetnet_approx(p, gamma_m, gamma_f, theta_tilt, r_c, opt);
  return ee_hetnet_from_coverage(p, cov.macro.value, cov.femto.value, gamma_m, gamma_f);
}

TiltRange tilt_range_from_distances(const VerticalPattern& pat, double rho_near, double rho_far) {
  if (!(rho_near > 0.0) || !(rho_far >= rho_near)) throw DomainError("tilt range needs 0 < rho_near <= rho_far");
  const double theta0 = pat.main_lobe_halfwidth();
  TiltRange r;
  r.theta_min = std::clamp(rad_to_deg(std::atan(pat.h_eff / rho_far)) - theta0, 0.0, 90.0);
  r.theta_max = std::clamp(rad_to_deg(std::atan(pat.h_eff / rho_near)) + theta0, 0.0, 90.0);
  return r;
}

TiltRange tilt_range(const NetworkParams& p, double epsilon, TiltRangeMode mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const ServingDistanceDist dist(p.path_loss, p.lambda_m);
  if (mode == TiltRangeMode::kDense) return tilt_range_from_distances(p.vertical, dist.mean(), dist.mean());
  const auto [rho0, rho1] = dist.quantile_bounds(epsilon);
  return tilt_range_from_distances(p.vertical, rho0, rho1);
}

}  // namespace mmwt
