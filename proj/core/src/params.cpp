#include "mmwt/params.hpp"

#include <cmath>

#include "mmwt/errors.hpp"

namespace mmwt {

void NetworkParams::validate() const {
  if (!(lambda_m > 0.0)) throw DomainError("lambda_m must be positive");
  if (!(lambda_f >= 0.0)) throw DomainError("lambda_f must be nonnegative");
  if (!(p_m > 0.0) || !(p_f > 0.0)) throw DomainError("transmit powers must be positive");
  if (!(p_cm >= 0.0) || !(p_cf >= 0.0)) throw DomainError("circuit powers must be nonnegative");
  if (!(eta_m > 0.0) || !(eta_f > 0.0)) throw DomainError("amplifier factors must be positive");
  if (!(sigma2 >= 0.0)) throw DomainError("noise power must be nonnegative");
  if (!(ell_w > 0.0 && ell_w <= 1.0)) throw DomainError("wall attenuation must lie in (0, 1]");
  if (!(r_f > 0.0)) throw DomainError("femtocell radius must be positive");
  if (fading.nakagami_m < 1) throw DomainError("Nakagami shape must be >= 1");
  path_loss.validate();
  vertical.validate();
  // Building the gain laws checks beamwidths and lobe ordering.
  (void)macro_gain();
  (void)femto_gain();
  (void)cross_fm_gain();
  (void)cross_mf_gain();
}

double max_sleep_radius(const NetworkParams& p) { return 1.0 / std::sqrt(kPi * p.lambda_m); }

double active_femto_density(const NetworkParams& p, double r_c) {
  return p.lambda_f * std::exp(-p.lambda_m * kPi * r_c * r_c);
}

void check_sleep_radius(const NetworkParams& p, double r_c) {
  // Tolerate round-off from grids that end exactly at the maximum.
  if (!(r_c >= 0.0 && r_c <= max_sleep_radius(p) * (1.0 + 1e-12)))
    throw DomainError("sleep radius outside [0, 1/sqrt(pi lambda_m)]");
}

}  // namespace mmwt
