#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmwt/params.hpp"

namespace mmwt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // bad arguments, config or domain
  kExitNumeric = 2,
  kExitValidation = 3,
  kExitInfeasible = 4,
};

struct GlobalOptions {
  std::string config;
  std::vector<std::string> set;
  std::string output;        // empty: stdout
  std::string plot_script;   // empty: none
  unsigned threads = 0;

  NetworkParams resolve() const;
};

inline const std::vector<std::string> kSweepVariables{"gamma_db", "theta_tilt_deg", "r_c_m",
                                                      "lambda_m", "lambda_f",       "beta"};

struct SweepOptions {
  std::string variable;  // empty: single row
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  bool log = false;

  bool active() const { return !variable.empty(); }
  /// Throws DomainError on an inconsistent range.
  std::vector<double> values() const;
};

struct OperatingPoint {
  std::string scenario = "auto";  // homogeneous | hetnet | auto (hetnet when lambda_f > 0)
  std::string backend = "exact";
  double gamma_db = 0.0;
  std::optional<double> gamma_f_db;  // defaults to gamma_db
  double theta_tilt_deg = 5.0;
  double r_c_m = 0.0;
};

struct DistOptions {
  double epsilon = 0.1;
};

struct CoverageCmdOptions {
  bool lower_bound = false;
  std::int64_t mc_drops = 0;  // 0: analytic only
  std::uint64_t seed = 1;
  bool thinned_holes = false;
};

struct EeOptions {
  double theta_step = 0.25;
  double tol = 0.25;
  double epsilon = 0.1;
  /// Zero-tilt ("a") and no-vertical-pattern ("b") reference columns to include.
  std::vector<std::string> baselines{"a", "b"};
};

struct OptimizeOptions {
  std::string method = "exhaustive";  // homogeneous: exhaustive | bisection
  double theta_step = 0.25;
  double tol = 0.25;
  double epsilon = 0.1;
  bool general_range = false;
  double eps_m = 0.2;
  double eps_f = 0.7;
  double r_c_step = 0.0;
  std::string trace;
};

struct ValidateOptions {
  std::string suite = "all";
  std::int64_t drops = 10000;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
};

int cmd_dist(const GlobalOptions& g, const SweepOptions& s, const DistOptions& o);
int cmd_coverage(const GlobalOptions& g, const SweepOptions& s, const OperatingPoint& op, const CoverageCmdOptions& o);
int cmd_ee(const GlobalOptions& g, const SweepOptions& s, const OperatingPoint& op, const EeOptions& o);
int cmd_optimize(const GlobalOptions& g, const OperatingPoint& op, const OptimizeOptions& o);
int cmd_validate(const GlobalOptions& g, const ValidateOptions& o);

/// MMWT_SEED when set and valid, otherwise 1.
std::uint64_t default_seed();

}  // namespace mmwt::cli
