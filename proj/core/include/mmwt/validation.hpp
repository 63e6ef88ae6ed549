#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mmwt/params.hpp"

namespace mmwt {

/// One checked quantity. `empirical` holds the simulated or reference value; `ci95` is 0 unless
/// it comes from a simulation.
struct ValidationRow {
  std::string quantity;
  double analytic = 0.0;
  double empirical = 0.0;
  double ci95 = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Reported for context only; does not affect the suite verdict.
  bool informational = false;
  std::string note;
};

struct ValidationReport {
  std::string suite;
  std::string config_hash;
  std::vector<ValidationRow> rows;

  bool passed() const;
  /// Checked rows that failed.
  std::size_t failures() const;
};

struct ValidationOptions {
  std::int64_t n_drops = 10000;
  std::int64_t serving_samples = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Suite names in a fixed order:
/// distance, macro, hetnet, bounds, derivatives, optimizer, dominance, monotonicity, joint,
/// convergence.
const std::vector<std::string>& validation_suites();

/// Runs one suite on top of `base`; suite-specific settings (densities, fading, thresholds)
/// override the corresponding fields. Throws DomainError for unknown suite names.
ValidationReport run_validation(std::string_view suite, const NetworkParams& base, const ValidationOptions& opt = {});

}  // namespace mmwt
