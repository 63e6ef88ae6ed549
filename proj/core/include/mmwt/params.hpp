#pragma once

#include "mmwt/model.hpp"

namespace mmwt {

/// Deployment and physical-layer constants for both the macro-only and the two-tier network.
///
/// Defaults follow the usual 28 GHz mmWave setup: densities, powers, antenna lobes, blockage
/// and path-loss exponents are the commonly used table values; the reference gains, antenna
/// height, wall loss and noise floor are set to typical values and are meant to be overridden.
struct NetworkParams {
  double lambda_m = 4.973e-5;  // MBS density, 1/m^2
  double lambda_f = 0.0;       // FBS density, 1/m^2 (0: macro-only network)
  double p_m = 20.0;           // W
  double p_f = 0.1;            // W
  double p_cm = 68.73;         // W
  double p_cf = 9.6;           // W
  double eta_m = 3.77;
  double eta_f = 4.0;
  double sigma2 = 3.98e-11;    // W; -174 dBm/Hz over 1 GHz with a 10 dB noise figure
  double ell_w = 0.1;          // wall attenuation, linear in (0, 1]
  double r_f = 30.0;           // femtocell radius, m

  SectorAntenna macro_tx{10.0, -10.0, 30.0};
  SectorAntenna macro_rx{10.0, -10.0, 90.0};
  SectorAntenna femto_tx{10.0, -10.0, 30.0};
  SectorAntenna femto_rx{10.0, -10.0, 90.0};

  PathLossModel path_loss{db_to_linear(-61.4), db_to_linear(-61.4), 2.5, 4.0, 0.003};
  VerticalPattern vertical{};
  FadingModel fading{};

  /// false: elevation gain fixed at 0 dB for every link (no vertical pattern).
  bool vertical_pattern = true;

  void validate() const;

  /// MBS -> macro user.
  HorizontalGainDist macro_gain() const { return horizontal_gain_dist(macro_tx, macro_rx); }
  /// FBS -> femto user.
  HorizontalGainDist femto_gain() const { return horizontal_gain_dist(femto_tx, femto_rx); }
  /// FBS -> macro user.
  HorizontalGainDist cross_fm_gain() const { return horizontal_gain_dist(femto_tx, macro_rx); }
  /// MBS -> femto user.
  HorizontalGainDist cross_mf_gain() const { return horizontal_gain_dist(macro_tx, femto_rx); }

  /// Elevation gain seen by a user at horizontal distance r from an MBS.
  double elevation_gain(double r, double theta_tilt) const {
    return vertical_pattern ? vertical_gain(r, theta_tilt, vertical) : 1.0;
  }
};

/// Largest admissible sleep radius, 1/sqrt(pi lambda_m).
double max_sleep_radius(const NetworkParams& p);

/// Density of FBSs left active by sleep regions of radius r_c, lambda_f exp(-pi lambda_m r_c^2).
double active_femto_density(const NetworkParams& p, double r_c);

/// Throws DomainError when r_c is outside [0, max_sleep_radius].
void check_sleep_radius(const NetworkParams& p, double r_c);

}  // namespace mmwt
