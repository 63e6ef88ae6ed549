#include "mmwt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmwt/errors.hpp"
#include "mmwt/parallel.hpp"

namespace mmwt {
namespace {

// Relative slack when comparing objective values for ties and unimodality.
constexpr double kFlatTol = 1e-12;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kFlatTol * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// True when the samples rise to a single peak and then fall (ties allowed).
bool unimodal(std::vector<TracePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });
  bool falling = false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double prev = pts[i - 1].ee, cur = pts[i].ee;
    if (nearly_equal(prev, cur)) continue;
    if (cur < prev) falling = true;
    else if (falling) return false;
  }
  return true;
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("SINR threshold must be positive (linear)");
}

}  // namespace

std::string_view to_string(OptMethod m) {
  switch (m) {
    case OptMethod::kExhaustive: return "exhaustive";
    case OptMethod::kBisection: return "bisection";
    case OptMethod::kApproxGrid: return "approx-grid";
  }
  return "unknown";
}

std::vector<double> grid_points(double lo, double hi, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (!(hi >= lo)) throw DomainError("grid upper end below lower end");
  const double span = hi - lo;
  const auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(span / step - 1e-9)));
  std::vector<double> out;
  out.reserve(n + 1);
  if (n == 0) {
    out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i <= n; ++i) out.push_back(i == n ? hi : lo + span * static_cast<double>(i) / n);
  return out;
}

int bisection_evaluation_bound(double width, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (width <= tol) return 1;
  return static_cast<int>(std::ceil(std::log2(width / tol))) + 1;
}

OptimizationOutcome optimize_tilt_exhaustive(const NetworkParams& p, double gamma, double grid_step,
                                             std::optional<TiltRange> range, const OptimizerOptions& opt) {
  check_gamma(gamma);
  const TiltRange r = range.value_or(TiltRange{0.0, 90.0});
  if (!(r.theta_min >= 0.0 && r.theta_max <= 90.0 && r.theta_min <= r.theta_max))
    throw DomainError("tilt range must satisfy 0 <= min <= max <= 90");
  const auto thetas = grid_points(r.theta_min, r.theta_max, grid_step);

  OptimizationOutcome out;
  out.method = OptMethod::kExhaustive;
  out.range = r;
  out.trace.resize(thetas.size());
  parallel_chunks(thetas.size(), opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const double cov = coverage_homogeneous(p, gamma, thetas[i], opt.coverage).value;
      out.trace[i] = {thetas[i], 0.0, ee_homogeneous_from_coverage(p, cov, gamma), cov, 0.0, true};
    }
  });
  out.evaluations = static_cast<int>(thetas.size());
  const auto best = std::max_element(out.trace.begin(), out.trace.end(),
                                     [](const auto& a, const auto& b) { return a.ee < b.ee; });
  out.theta_opt = best->theta;
  out.ee_opt = best->ee;
  out.non_unimodal = !unimodal(out.trace);
  if (out.non_unimodal) out.warning = "objective has several local maxima on the grid";
  return out;
}

OptimizationOutcome optimize_tilt_bisection(const NetworkParams& p, double gamma, double tol, double epsilon,
                                            TiltRangeMode mode, const OptimizerOptions& opt) {
  check_gamma(gamma);
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  const TiltRange range = tilt_range(p, epsilon, mode);

  OptimizationOutcome out;
  out.method = OptMethod::kBisection;
  out.range = range;
  auto objective = [&](double theta) {
    const double cov = coverage_homogeneous_approx(p, gamma, theta, opt.coverage).value;
    const double ee = ee_homogeneous_from_coverage(p, cov, gamma);
    out.trace.push_back({theta, 0.0, ee, cov, 0.0, true});
    ++out.evaluations;
    return ee;
  };

  double lo = range.theta_min, hi = range.theta_max;
  double f_lo = objective(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = objective(mid);
    if (f_mid > f_lo) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  const auto [mn, mx] = std::minmax_element(out.trace.begin(), out.trace.end(),
                                            [](const auto& a, const auto& b) { return a.ee < b.ee; });
  if (nearly_equal(mn->ee, mx->ee)) {
    // Flat objective: no direction is preferred, keep the centre of the search range.
    out.theta_opt = 0.5 * (range.theta_min + range.theta_max);
    out.ee_opt = f_lo;
    return out;
  }
  out.theta_opt = 0.5 * (lo + hi);
  out.ee_opt = f_lo;
  out.non_unimodal = !unimodal(out.trace);
  if (out.non_unimodal) out.warning = "bracket comparisons are inconsistent with a single peak";
  return out;
}

OptimizationOutcome optimize_hetnet_joint(const NetworkParams& p, double gamma_m, double gamma_f, double eps_m,
                                          double eps_f, const JointGrid& grid, Backend backend,
                                          const OptimizerOptions& opt) {
  check_gamma(gamma_m);
  check_gamma(gamma_f);
  if (!(eps_m > 0.0 && eps_m < 1.0) || !(eps_f > 0.0 && eps_f < 1.0))
    throw DomainError("coverage slack epsilon must lie in (0, 1)");
  p.validate();

  const double r_c_max = max_sleep_radius(p);
  const double r_c_step = grid.r_c_step > 0.0 ? grid.r_c_step : r_c_max / 64.0;
  const auto r_cs = grid_points(0.0, r_c_max, r_c_step);
  const TiltRange range = backend == Backend::kExact ? TiltRange{0.0, 90.0} : tilt_range(p, 0.1, TiltRangeMode::kDense);
  const auto thetas = grid_points(range.theta_min, range.theta_max, grid.theta_step);

  OptimizationOutcome out;
  out.method = backend == Backend::kExact ? OptMethod::kExhaustive : OptMethod::kApproxGrid;
  out.range = range;
  const std::size_t nj = r_cs.size();
  out.trace.resize(thetas.size() * nj);

  parallel_chunks(thetas.size(), opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      std::vector<double> macro(nj), femto(nj);
      if (backend == Backend::kExact) {
        const auto m = coverage_macro_hetnet_sweep(p, gamma_m, thetas[i], r_cs, opt.coverage);
        const auto f = coverage_femto_sweep(p, gamma_f, thetas[i], r_cs, opt.coverage);
        for (std::size_t j = 0; j < nj; ++j) {
          macro[j] = m[j].value;
          femto[j] = f[j].value;
        }
      } else {
        const auto c = coverage_hetnet_approx_sweep(p, gamma_m, gamma_f, thetas[i], r_cs, opt.coverage);
        for (std::size_t j = 0; j < nj; ++j) {
          macro[j] = c[j].macro.value;
          femto[j] = c[j].femto.value;
        }
      }
      for (std::size_t j = 0; j < nj; ++j) {
        auto& t = out.trace[i * nj + j];
        t.theta = thetas[i];
        t.r_c = r_cs[j];
        t.macro_coverage = macro[j];
        t.femto_coverage = femto[j];
        t.ee = ee_hetnet_from_coverage(p, macro[j], femto[j], gamma_m, gamma_f);
        t.feasible = macro[j] >= 1.0 - eps_m && femto[j] >= 1.0 - eps_f;
      }
    }
  });
  out.evaluations = static_cast<int>(out.trace.size());

  const TracePoint* best = nullptr;
  for (const auto& t : out.trace)
    if (t.feasible && (!best || t.ee > best->ee)) best = &t;
  if (!best) {
    out.feasible = false;
    out.warning = "no grid point meets both coverage constraints";
    double least = std::numeric_limits<double>::infinity();
    for (const auto& t : out.trace) {
      const double shortfall = std::max(1.0 - eps_m - t.macro_coverage, 1.0 - eps_f - t.femto_coverage);
      if (shortfall < least) {
        least = shortfall;
        best = &t;
      }
    }
  }
  out.theta_opt = best->theta;
  out.r_c_opt = best->r_c;
  out.ee_opt = best->ee;
  return out;
}

}  // namespace mmwt
