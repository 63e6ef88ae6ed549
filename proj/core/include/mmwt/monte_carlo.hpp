#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmwt/params.hpp"

namespace mmwt {

enum class Scenario { kHomogeneous, kHetNet };

struct DropConfig {
  /// Simulation disc radius in meters; 0 selects default_window_radius().
  double window_radius = 0.0;
  std::int64_t n_drops = 10000;
  std::uint64_t rng_seed = 1;
  Scenario scenario = Scenario::kHomogeneous;
  /// true: FBSs within r_c of any MBS are removed. false: each FBS is kept independently with
  /// probability exp(-pi lambda_m r_c^2).
  bool exact_hole_process = true;
  /// Drops without any MBS in the window are skipped instead of counted as uncovered.
  bool condition_on_nonempty = false;
  unsigned threads = 0;  // 0: one per hardware thread
};

/// max(5 / beta, 10 / sqrt(pi lambda_m)).
double default_window_radius(const NetworkParams& p);

struct EmpiricalEstimate {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;  // 1.96 sqrt(p (1 - p) / n)
  std::int64_t n = 0;

  static EmpiricalEstimate from_counts(std::int64_t hits, std::int64_t n);
};

/// Empirical Pr{SINR > gamma} of the typical macro user in an MBS-only network.
EmpiricalEstimate drop_homogeneous(const NetworkParams& p, const DropConfig& drop, double gamma, double theta_tilt);

/// Same drops, one estimate per threshold.
std::vector<EmpiricalEstimate> drop_homogeneous_sweep(const NetworkParams& p, const DropConfig& drop,
                                                      std::span<const double> gammas, double theta_tilt);

struct HetNetEstimate {
  EmpiricalEstimate macro;
  EmpiricalEstimate femto;
};

HetNetEstimate drop_hetnet(const NetworkParams& p, const DropConfig& drop, double gamma_m, double gamma_f,
                           double theta_tilt, double r_c);

/// Every (threshold, sleep radius) pair under both hole models, from one set of drops.
/// Tables are indexed [g * r_cs.size() + j].
struct HetNetSweepEstimate {
  std::size_t n_r_c = 0;
  std::vector<EmpiricalEstimate> macro_exact, macro_thinned;
  std::vector<EmpiricalEstimate> femto_exact, femto_thinned;
  /// Fraction of drops whose serving FBS was silenced, per sleep radius.
  std::vector<EmpiricalEstimate> silenced_exact, silenced_thinned;

  const EmpiricalEstimate& macro(bool exact, std::size_t g, std::size_t j) const {
    return (exact ? macro_exact : macro_thinned)[g * n_r_c + j];
  }
  const EmpiricalEstimate& femto(bool exact, std::size_t g, std::size_t j) const {
    return (exact ? femto_exact : femto_thinned)[g * n_r_c + j];
  }
};

HetNetSweepEstimate drop_hetnet_sweep(const NetworkParams& p, const DropConfig& drop,
                                      std::span<const double> gammas_m, std::span<const double> gammas_f,
                                      double theta_tilt, std::span<const double> r_cs);

/// Equivalent distance to the serving MBS, one sample per drop; +inf for an empty window.
std::vector<double> sample_serving_distance(const NetworkParams& p, const DropConfig& drop);

}  // namespace mmwt
