#include "mmwt/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmwt/errors.hpp"

namespace mmwt {

void PathLossModel::validate() const {
  if (!(c_los > 0.0) || !(c_nlos > 0.0)) throw DomainError("path loss: reference gains must be positive");
  if (!(alpha_los > 2.0)) throw DomainError("path loss: alpha_los must exceed 2");
  if (!(alpha_nlos >= alpha_los)) throw DomainError("path loss: alpha_nlos must be >= alpha_los");
  if (!(beta > 0.0)) throw DomainError("path loss: blockage intensity must be positive");
}

double los_probability(double r, const PathLossModel& model) {
  if (!(r >= 0.0)) throw DomainError("los_probability: negative distance");
  return std::exp(-model.beta * r);
}

double path_loss(double r, LinkState state, const PathLossModel& model) {
  if (!(r > 0.0)) throw DomainError("path_loss: distance must be positive");
  return model.gain(state) * std::pow(r, -model.exponent(state));
}

void VerticalPattern::validate() const {
  if (!(theta_3db > 0.0) || !(sll_db > 0.0) || !(h_eff > 0.0))
    throw DomainError("vertical pattern: theta_3db, sll_db and h_eff must be positive");
}

double vertical_gain_db(double r_horizontal, double theta_tilt, const VerticalPattern& pat) {
  if (!(r_horizontal > 0.0)) throw DomainError("vertical_gain: horizontal distance must be positive");
  if (!(theta_tilt >= 0.0 && theta_tilt <= 90.0)) throw DomainError("vertical_gain: tilt outside [0, 90] degrees");
  const double elevation = rad_to_deg(std::atan(pat.h_eff / r_horizontal));
  const double offset = (elevation - theta_tilt) / pat.theta_3db;
  return -std::min(12.0 * offset * offset, pat.sll_db);
}

double vertical_gain(double r_horizontal, double theta_tilt, const VerticalPattern& pat) {
  return db_to_linear(vertical_gain_db(r_horizontal, theta_tilt, pat));
}

PatternEdges pattern_edges(double theta_tilt, const VerticalPattern& pat) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double half = pat.main_lobe_halfwidth();
  PatternEdges e{};
  e.inner = theta_tilt + half >= 90.0 ? 0.0 : pat.h_eff / std::tan(deg_to_rad(theta_tilt + half));
  e.boresight = theta_tilt > 0.0 ? pat.h_eff / std::tan(deg_to_rad(theta_tilt)) : inf;
  e.outer = theta_tilt - half <= 0.0 ? inf : pat.h_eff / std::tan(deg_to_rad(theta_tilt - half));
  return e;
}

double HorizontalGainDist::mean() const {
  return std::inner_product(values.begin(), values.end(), probs.begin(), 0.0);
}

double HorizontalGainDist::moment(double p) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += probs[i] * std::pow(values[i], p);
  return acc;
}

HorizontalGainDist horizontal_gain_dist(double tx_main_db, double tx_side_db, double tx_bw_deg,
                                        double rx_main_db, double rx_side_db, double rx_bw_deg) {
  auto check_bw = [](double bw) {
    if (!(bw > 0.0 && bw <= 360.0)) throw DomainError("horizontal_gain_dist: beamwidth outside (0, 360]");
  };
  check_bw(tx_bw_deg);
  check_bw(rx_bw_deg);
  if (tx_main_db < tx_side_db || rx_main_db < rx_side_db)
    throw DomainError("horizontal_gain_dist: main lobe below side lobe");

  const double mt = db_to_linear(tx_main_db), st = db_to_linear(tx_side_db);
  const double mr = db_to_linear(rx_main_db), sr = db_to_linear(rx_side_db);
  const double ct = tx_bw_deg / 360.0, cr = rx_bw_deg / 360.0;

  HorizontalGainDist d;
  d.values = {mt * mr, mt * sr, st * mr, st * sr};
  d.probs = {ct * cr, ct * (1.0 - cr), (1.0 - ct) * cr, (1.0 - ct) * (1.0 - cr)};
  return d;
}

HorizontalGainDist horizontal_gain_dist(const SectorAntenna& tx, const SectorAntenna& rx) {
  return horizontal_gain_dist(tx.main_db, tx.side_db, tx.beamwidth_deg, rx.main_db, rx.side_db,
                              rx.beamwidth_deg);
}

double nakagami_ccdf(double z, int m) {
  if (m < 1) throw DomainError("nakagami_ccdf: shape must be >= 1");
  if (!(z >= 0.0)) throw DomainError("nakagami_ccdf: negative argument");
  const double mz = m * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= mz / k;
    sum += term;
  }
  return std::exp(-mz) * sum;
}

}  // namespace mmwt
