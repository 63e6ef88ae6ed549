#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mmwt/distance.hpp"
#include "mmwt/laplace.hpp"
#include "mmwt/params.hpp"

namespace mmwt {

enum class CoverageMethod { kExactAnalytic, kTaylorApprox, kLowerBound, kMonteCarlo };

std::string_view to_string(CoverageMethod m);

struct CoverageResult {
  double value = 0.0;
  CoverageMethod method = CoverageMethod::kExactAnalytic;
  double ci_halfwidth = 0.0;  // 0 for analytic results
};

struct CoverageOptions {
  LaplaceOptions laplace{};
  /// Outer integral over the serving distance.
  quad::Options outer{1e-6, 1e-7, 2000, true};
  /// Serving-distance mass dropped beyond the outer truncation radius.
  double tail_mass = 1e-6;
};

// Interference populations ------------------------------------------------------------------

/// LOS and NLOS MBS interferers of a macro user served at equivalent distance rho.
LaplaceExponent macro_interference(const NetworkParams& p, double rho);
/// FBSs (active density lambda_f') seen by a macro user through one wall, Rayleigh fading.
InterferenceTier femto_to_macro_tier(const NetworkParams& p, double r_c);
/// MBSs seen by an indoor femto user, tilted pattern, Rayleigh fading.
InterferenceTier macro_to_femto_tier(const NetworkParams& p);
/// Neighbouring FBSs beyond `lower` seen through two walls, Rayleigh fading.
InterferenceTier femto_to_femto_tier(const NetworkParams& p, double r_c, double lower);

/// Probability that a Gamma(m, 1/m) faded link beats interference-plus-noise, from the scaled
/// Laplace derivatives b[l] = z^l L^(l)(z) at z = m s and the noise term v = m s sigma^2:
///   e^-v sum_{k<m} sum_{l<=k} binom(k, l) v^(k-l) (-1)^l b[l] / k!.
double nakagami_coverage(int m, double v, std::span<const double> b);

// Macro user --------------------------------------------------------------------------------

/// Coverage of a macro user conditioned on the serving (equivalent) distance rho, one value per
/// sleep radius in `r_cs` (ignored when lambda_f = 0).
void macro_conditional_coverage(const NetworkParams& p, double gamma, double theta_tilt, double rho,
                                std::span<const double> r_cs, std::span<double> out, const CoverageOptions& opt = {});

CoverageResult coverage_homogeneous(const NetworkParams& p, double gamma, double theta_tilt,
                                    const CoverageOptions& opt = {});

CoverageResult coverage_macro_hetnet(const NetworkParams& p, double gamma_m, double theta_tilt, double r_c,
                                     const CoverageOptions& opt = {});

/// Exact macro coverage for several sleep radii at once, sharing the MBS-tier integrals.
std::vector<CoverageResult> coverage_macro_hetnet_sweep(const NetworkParams& p, double gamma_m, double theta_tilt,
                                                        std::span<const double> r_cs,
                                                        const CoverageOptions& opt = {});

// Femto user --------------------------------------------------------------------------------

/// Coverage of a femto user at distance rho from an active FBS, one value per sleep radius,
/// without the probability that the FBS itself is active.
void femto_conditional_coverage(const NetworkParams& p, double gamma_f, double theta_tilt, double rho,
                                double ff_lower, std::span<const double> r_cs, std::span<double> out,
                                const CoverageOptions& opt = {});

CoverageResult coverage_femto(const NetworkParams& p, double gamma_f, double theta_tilt, double r_c,
                              const CoverageOptions& opt = {});

std::vector<CoverageResult> coverage_femto_sweep(const NetworkParams& p, double gamma_f, double theta_tilt,
                                                 std::span<const double> r_cs, const CoverageOptions& opt = {});

/// Closed-form interference-limited lower bound C0 exp(-pi lambda_m r_c^2); the elevation gain of
/// every MBS link is replaced by its 0 dB maximum and the FBS exclusion disc is dropped.
CoverageResult coverage_femto_lower_bound(const NetworkParams& p, double gamma_f, double r_c);

// Single-point approximations ---------------------------------------------------------------

/// Conditional macro coverage evaluated only at the mean serving distance.
CoverageResult coverage_homogeneous_approx(const NetworkParams& p, double gamma, double theta_tilt,
                                           const CoverageOptions& opt = {});

struct HetNetCoverage {
  CoverageResult macro;
  CoverageResult femto;
};

/// Macro part at the mean serving distance, femto part at the mean femto link distance 2 r_f / 3.
HetNetCoverage coverage_hetnet_approx(const NetworkParams& p, double gamma_m, double gamma_f, double theta_tilt,
                                      double r_c, const CoverageOptions& opt = {});

std::vector<HetNetCoverage> coverage_hetnet_approx_sweep(const NetworkParams& p, double gamma_m, double gamma_f,
                                                         double theta_tilt, std::span<const double> r_cs,
                                                         const CoverageOptions& opt = {});

}  // namespace mmwt
