#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmwt/energy.hpp"

namespace mmwt {

enum class OptMethod { kExhaustive, kBisection, kApproxGrid };

std::string_view to_string(OptMethod m);

struct TracePoint {
  double theta = 0.0;           // degrees
  double r_c = 0.0;             // meters, 0 for the macro-only network
  double ee = 0.0;              // bits/s/Hz/W
  double macro_coverage = 0.0;
  double femto_coverage = 0.0;
  bool feasible = true;
};

struct OptimizationOutcome {
  double theta_opt = 0.0;
  std::optional<double> r_c_opt;
  double ee_opt = 0.0;
  OptMethod method = OptMethod::kExhaustive;
  int evaluations = 0;
  std::vector<TracePoint> trace;
  bool feasible = true;
  /// Set when the sampled objective is not unimodal along the search path.
  bool non_unimodal = false;
  std::string warning;
  TiltRange range{};
};

struct OptimizerOptions {
  CoverageOptions coverage{};
  unsigned threads = 0;  // 0: one per hardware thread
};

/// Grid search of the exact homogeneous EE; the grid always includes both range ends.
OptimizationOutcome optimize_tilt_exhaustive(const NetworkParams& p, double gamma, double grid_step = 0.25,
                                             std::optional<TiltRange> range = std::nullopt,
                                             const OptimizerOptions& opt = {});

/// Bracket halving on the mean-distance EE over tilt_range(): the midpoint replaces the lower end
/// when it beats the lower end's objective, otherwise it replaces the upper end. Stops once the
/// bracket is narrower than `tol` and returns its midpoint.
OptimizationOutcome optimize_tilt_bisection(const NetworkParams& p, double gamma, double tol = 0.25,
                                            double epsilon = 0.1, TiltRangeMode mode = TiltRangeMode::kDense,
                                            const OptimizerOptions& opt = {});

/// Evaluation count the bracket halving needs, ceil(log2(width / tol)) + 1.
int bisection_evaluation_bound(double width, double tol);

struct JointGrid {
  double theta_step = 0.25;  // degrees
  double r_c_step = 0.0;     // meters; 0 selects max_sleep_radius / 64
};

/// Feasibility-filtered grid search over (tilt, sleep radius). The exact backend scans the full
/// tilt range; the approx backend scans tilt_range() of the dense mode. When no grid point meets
/// both coverage constraints the point with the smallest worst-case shortfall is returned with
/// feasible = false.
OptimizationOutcome optimize_hetnet_joint(const NetworkParams& p, double gamma_m, double gamma_f, double eps_m,
                                          double eps_f, const JointGrid& grid = {}, Backend backend = Backend::kExact,
                                          const OptimizerOptions& opt = {});

/// Equally spaced points from lo to hi, step at most `step`, both ends included.
std::vector<double> grid_points(double lo, double hi, double step);

}  // namespace mmwt
