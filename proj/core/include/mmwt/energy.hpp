#pragma once

#include <string_view>

#include "mmwt/coverage.hpp"
#include "mmwt/params.hpp"

namespace mmwt {

/// Which coverage evaluation feeds the EE objective.
enum class Backend {
  kExact,   // integral over the serving distance
  kApprox,  // single point at the mean serving distance
};

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view name);

/// log2(1 + gamma), bits/s/Hz.
double rate_factor(double gamma);

/// Consumed power per MBS, P_cm + eta_m P_m.
double macro_power(const NetworkParams& p);
/// Consumed power per unit area, lambda_m (P_cm + eta_m P_m) + lambda_f (P_cf + eta_f P_f).
double hetnet_power_density(const NetworkParams& p);

/// coverage log2(1 + gamma) / (P_cm + eta_m P_m), bits/s/Hz/W.
double ee_homogeneous_from_coverage(const NetworkParams& p, double coverage, double gamma);

double ee_homogeneous(const NetworkParams& p, double gamma, double theta_tilt, Backend backend,
                      const CoverageOptions& opt = {});

/// (lambda_m Pm log2(1 + gamma_m) + lambda_f Pf log2(1 + gamma_f)) / hetnet_power_density, where
/// Pf already carries the probability that the serving FBS is active.
double ee_hetnet_from_coverage(const NetworkParams& p, double macro_coverage, double femto_coverage,
                               double gamma_m, double gamma_f);

double ee_hetnet(const NetworkParams& p, double gamma_m, double gamma_f, double theta_tilt, double r_c,
                 Backend backend, const CoverageOptions& opt = {});

struct TiltRange {
  double theta_min = 0.0;  // degrees
  double theta_max = 90.0;

  double width() const { return theta_max - theta_min; }
  bool contains(double theta) const { return theta >= theta_min && theta <= theta_max; }
};

enum class TiltRangeMode {
  kDense,    // both ends anchored at the mean serving distance
  kGeneral,  // inner/outer serving-distance quantiles
};

/// [max(0, atan(h / rho_far) - theta0), min(90, atan(h / rho_near) + theta0)] in degrees.
TiltRange tilt_range_from_distances(const VerticalPattern& pat, double rho_near, double rho_far);

/// Tilts that can put the main lobe on the likely serving distances. `epsilon` is the serving-distance
/// probability mass left outside [rho0, rho1] in general mode; the dense mode uses the mean only.
TiltRange tilt_range(const NetworkParams& p, double epsilon, TiltRangeMode mode = TiltRangeMode::kDense);

}  // namespace mmwt
