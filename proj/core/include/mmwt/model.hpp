#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace mmwt {

inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

enum class LinkState { kLos, kNlos };

/// Dual-slope blockage path loss: C_w r^-alpha_w, LOS with probability exp(-beta r).
struct PathLossModel {
  double c_los = 0.0;       // linear gain at 1 m
  double c_nlos = 0.0;      // linear gain at 1 m
  double alpha_los = 2.5;
  double alpha_nlos = 4.0;
  double beta = 0.003;      // blockage intensity, 1/m

  void validate() const;
  double gain(LinkState s) const { return s == LinkState::kLos ? c_los : c_nlos; }
  double exponent(LinkState s) const { return s == LinkState::kLos ? alpha_los : alpha_nlos; }
};

double los_probability(double r, const PathLossModel& model);
double path_loss(double r, LinkState state, const PathLossModel& model);

/// Elevation pattern of the macro array:
///   G_dB = -min(12 ((atan(h_eff / r) - tilt) / theta_3db)^2, sll_db).
struct VerticalPattern {
  double theta_3db = 6.0;  // degrees
  double sll_db = 20.0;    // positive
  double h_eff = 10.0;     // meters

  void validate() const;
  /// Half-width of the quadratic region in degrees; beyond it the gain sits on the side-lobe floor.
  double main_lobe_halfwidth() const { return theta_3db * std::sqrt(sll_db / 12.0); }
};

double vertical_gain_db(double r_horizontal, double theta_tilt, const VerticalPattern& pat);
double vertical_gain(double r_horizontal, double theta_tilt, const VerticalPattern& pat);

/// Horizontal radii at which the elevation pattern leaves the quadratic region.
/// `inner` may be 0 (steep angles never reach the floor) and `outer` +inf (tilt near horizon).
struct PatternEdges {
  double inner;
  double boresight;  // +inf for zero tilt
  double outer;
};
PatternEdges pattern_edges(double theta_tilt, const VerticalPattern& pat);

/// Sectored main/side lobe antenna, gains in dB at the interface.
struct SectorAntenna {
  double main_db = 10.0;
  double side_db = -10.0;
  double beamwidth_deg = 30.0;
};

/// Four-point law of the total horizontal link gain
/// {Mt Mr, Mt mr, mt Mr, mt mr} with probabilities {ct cr, ct(1-cr), (1-ct)cr, (1-ct)(1-cr)}.
struct HorizontalGainDist {
  std::array<double, 4> values{};
  std::array<double, 4> probs{};

  double aligned() const { return values[0]; }
  double mean() const;
  /// E{D^p}.
  double moment(double p) const;
};

HorizontalGainDist horizontal_gain_dist(double tx_main_db, double tx_side_db, double tx_bw_deg,
                                        double rx_main_db, double rx_side_db, double rx_bw_deg);
HorizontalGainDist horizontal_gain_dist(const SectorAntenna& tx, const SectorAntenna& rx);

struct FadingModel {
  int nakagami_m = 1;  // 1: Rayleigh
};

/// CCDF of Gamma(m, 1/m) fading power.
double nakagami_ccdf(double z, int m);

}  // namespace mmwt
