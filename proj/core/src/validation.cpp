#include "mmwt/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "mmwt/config.hpp"
#include "mmwt/coverage.hpp"
#include "mmwt/distance.hpp"
#include "mmwt/errors.hpp"
#include "mmwt/monte_carlo.hpp"
#include "mmwt/optimize.hpp"

namespace mmwt {
namespace {

constexpr double kTilt = 5.0;  // degrees, used wherever a suite needs one fixed tilt
constexpr double kBeta[] = {0.003, 0.006};
constexpr int kShapes[] = {1, 5};
constexpr double kGammaDb[] = {-10.0, 0.0, 10.0, 20.0};

std::string label(std::initializer_list<std::pair<const char*, double>> parts, const char* head) {
  std::ostringstream os;
  os << head;
  for (const auto& [k, v] : parts) os << ' ' << k << '=' << v;
  return os.str();
}

ValidationRow oracle_row(std::string name, double analytic, const EmpiricalEstimate& e, double floor_tol) {
  ValidationRow r;
  r.quantity = std::move(name);
  r.analytic = analytic;
  r.empirical = e.mean;
  r.ci95 = e.ci95_halfwidth;
  r.tolerance = std::max(floor_tol, 2.0 * e.ci95_halfwidth);
  r.pass = std::abs(analytic - e.mean) <= r.tolerance;
  return r;
}

ValidationRow bound_row(std::string name, double analytic, double reference, double tol, bool pass,
                        bool informational = false, std::string note = {}) {
  ValidationRow r;
  r.quantity = std::move(name);
  r.analytic = analytic;
  r.empirical = reference;
  r.tolerance = tol;
  r.pass = pass;
  r.informational = informational;
  r.note = std::move(note);
  return r;
}

NetworkParams with_femto(NetworkParams p) {
  p.lambda_f = 10.0 * p.lambda_m;
  return p;
}

std::vector<double> gammas_linear() {
  std::vector<double> g;
  for (double db : kGammaDb) g.push_back(db_to_linear(db));
  return g;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std::isfinite(samples[i]) ? cdf(samples[i]) : 1.0;
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// -------------------------------------------------------------------------------------------------

void suite_distance(const NetworkParams& base, const ValidationOptions& opt, ValidationReport& rep) {
  const ServingDistanceDist dist(base.path_loss, base.lambda_m);
  DropConfig drop;
  drop.n_drops = opt.serving_samples;
  drop.rng_seed = opt.seed;
  drop.threads = opt.threads;
  const auto samples = sample_serving_distance(base, drop);

  const double ks = ks_distance(samples, [&](double r) { return dist.cdf(r); });
  rep.rows.push_back(bound_row("ks_distance", 0.0, ks, 0.01, ks < 0.01));

  double sum = 0.0, sum2 = 0.0;
  std::int64_t n = 0;
  for (double x : samples)
    if (std::isfinite(x)) {
      sum += x;
      sum2 += x * x;
      ++n;
    }
  const double mean = sum / n;
  const double sd = std::sqrt(std::max(0.0, sum2 / n - mean * mean));
  ValidationRow m;
  m.quantity = "mean_serving_distance_m";
  m.analytic = dist.mean();
  m.empirical = mean;
  m.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(n));
  m.tolerance = 0.01 * dist.mean();
  m.pass = std::abs(mean - dist.mean()) <= m.tolerance;
  rep.rows.push_back(m);

  const auto knots = dist.quantile_knots();
  const double total = quad::integrate_scalar_to_infinity([&](double r) { return dist.pdf(r); }, 0.0, dist.mean(),
                                                          knots, {1e-10, 0.0, 4000, true});
  rep.rows.push_back(bound_row("pdf_integral", total, 1.0, 1e-4, std::abs(total - 1.0) <= 1e-4));

  // Without blockage every BS is LOS and the nearest-point law is Rayleigh.
  NetworkParams clear = base;
  clear.path_loss.beta = 1e-9;
  drop.window_radius = 10.0 / std::sqrt(kPi * base.lambda_m);
  const auto rayleigh = sample_serving_distance(clear, drop);
  const double lam = base.lambda_m;
  const double ks0 =
      ks_distance(rayleigh, [lam](double r) { return -std::expm1(-kPi * lam * r * r); });
  rep.rows.push_back(bound_row("ks_distance_no_blockage", 0.0, ks0, 0.01, ks0 < 0.01));
}

void suite_macro(const NetworkParams& base, const ValidationOptions& opt, ValidationReport& rep) {
  const auto gammas = gammas_linear();
  for (int m : kShapes)
    for (double beta : kBeta) {
      NetworkParams p = base;
      p.lambda_f = 0.0;
      p.fading.nakagami_m = m;
      p.path_loss.beta = beta;
      DropConfig drop;
      drop.n_drops = opt.n_drops;
      drop.rng_seed = opt.seed;
      drop.threads = opt.threads;
      const auto mc = drop_homogeneous_sweep(p, drop, gammas, kTilt);
      for (std::size_t g = 0; g < gammas.size(); ++g) {
        const double a = coverage_homogeneous(p, gammas[g], kTilt).value;
        rep.rows.push_back(oracle_row(label({{"m", m}, {"beta", beta}, {"gamma_db", kGammaDb[g]}}, "coverage"), a,
                                      mc[g], 0.02));
      }
    }
}

void suite_hetnet(const NetworkParams& base, const ValidationOptions& opt, ValidationReport& rep) {
  const auto gammas = gammas_linear();
  for (int m : kShapes)
    for (double beta : kBeta) {
      NetworkParams p = with_femto(base);
      p.fading.nakagami_m = m;
      p.path_loss.beta = beta;
      const double r_max = max_sleep_radius(p);
      const std::vector<double> r_cs{0.0, 0.5 * r_max, r_max};
      DropConfig drop;
      drop.n_drops = opt.n_drops;
      drop.rng_seed = opt.seed;
      drop.threads = opt.threads;
      drop.scenario = Scenario::kHetNet;
      const auto mc = drop_hetnet_sweep(p, drop, gammas, gammas, kTilt, r_cs);
      for (std::size_t g = 0; g < gammas.size(); ++g) {
        const auto macro = coverage_macro_hetnet_sweep(p, gammas[g], kTilt, r_cs);
        const auto femto = coverage_femto_sweep(p, gammas[g], kTilt, r_cs);
        for (std::size_t j = 0; j < r_cs.size(); ++j) {
          const auto key = std::initializer_list<std::pair<const char*, double>>{
              {"m", m}, {"beta", beta}, {"gamma_db", kGammaDb[g]}, {"r_c", r_cs[j]}};
          rep.rows.push_back(oracle_row(label(key, "macro_coverage"), macro[j].value, mc.macro(true, g, j), 0.03));
          rep.rows.push_back(oracle_row(label(key, "femto_coverage"), femto[j].value, mc.femto(true, g, j), 0.03));
          if (j == 0) continue;
          auto gap = [&](const char* head, const EmpiricalEstimate& exact, const EmpiricalEstimate& thinned) {
            auto row = bound_row(label(key, head), exact.mean, thinned.mean, 0.0, true, true,
                                 "simulated hole process minus independent thinning");
            row.ci95 = std::max(exact.ci95_halfwidth, thinned.ci95_halfwidth);
            rep.rows.push_back(row);
          };
          gap("macro_hole_gap", mc.macro(true, g, j), mc.macro(false, g, j));
          gap("femto_hole_gap", mc.femto(true, g, j), mc.femto(false, g, j));
        }
      }
    }
}

void suite_bounds(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  const auto gammas = gammas_linear();
  for (int m : kShapes)
    for (double beta : kBeta) {
      NetworkParams p = with_femto(base);
      p.sigma2 = 0.0;
      p.fading.nakagami_m = m;
      p.path_loss.beta = beta;
      const double r_max = max_sleep_radius(p);
      const std::vector<double> r_cs{0.0, 0.5 * r_max, r_max};
      for (std::size_t g = 0; g < gammas.size(); ++g) {
        const auto exact = coverage_femto_sweep(p, gammas[g], kTilt, r_cs);
        for (std::size_t j = 0; j < r_cs.size(); ++j) {
          const double lb = coverage_femto_lower_bound(p, gammas[g], r_cs[j]).value;
          rep.rows.push_back(bound_row(
              label({{"m", m}, {"beta", beta}, {"gamma_db", kGammaDb[g]}, {"r_c", r_cs[j]}}, "lower_bound_le_exact"),
              lb, exact[j].value, 0.0, lb <= exact[j].value));
        }
      }
    }

  NetworkParams p = with_femto(base);
  p.sigma2 = 0.0;
  const double gamma_f = db_to_linear(10.0);
  const double r_max = max_sleep_radius(p);
  const auto r_cs = grid_points(0.0, r_max, r_max / 8.0);
  const auto exact = coverage_femto_sweep(p, gamma_f, kTilt, r_cs);
  for (std::size_t j = 0; j < r_cs.size(); ++j) {
    const double lb = coverage_femto_lower_bound(p, gamma_f, r_cs[j]).value;
    const double gap = (exact[j].value - lb) / exact[j].value;
    rep.rows.push_back(bound_row(label({{"gamma_db", 10.0}, {"r_c", r_cs[j]}}, "lower_bound_relative_gap"), lb,
                                 exact[j].value, 0.05, gap >= 0.0 && gap < 0.05));
  }
}

void suite_derivatives(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  const ServingDistanceDist dist(base.path_loss, base.lambda_m);
  const double rho = dist.mean();
  const auto exponent = macro_interference(base, rho);
  LaplaceOptions tight;
  tight.quad = {1e-13, 0.0, 20000, true};
  const auto& pl = base.path_loss;
  const double s = std::pow(rho, pl.alpha_los) /
                   (base.p_m * pl.c_los * base.macro_gain().aligned() * base.elevation_gain(rho, kTilt));
  constexpr int kOrders = 4;

  for (double scale : {0.3, 1.0, 3.0}) {
    const double z = scale * s;
    const auto exact = laplace_derivatives(exponent, z, kTilt, kOrders, tight);
    // Central differences at h and h/2 combined by one Richardson step.
    auto central = [&](int order, double h) {
      double acc = 0.0, binom = 1.0;
      for (int k = 0; k <= order; ++k) {
        const double x = z + (0.5 * order - k) * h;
        acc += ((k % 2 == 0) ? 1.0 : -1.0) * binom * laplace_value(exponent, x, kTilt, tight);
        binom = binom * (order - k) / (k + 1);
      }
      return acc / std::pow(h, order);
    };
    for (int l = 1; l <= kOrders; ++l) {
      const double h = 0.04 * z;
      const double fd = (4.0 * central(l, 0.5 * h) - central(l, h)) / 3.0;
      const double rel = std::abs(fd - exact[l]) / std::abs(exact[l]);
      auto row = bound_row(label({{"z_over_s", scale}, {"order", l}}, "laplace_derivative"), exact[l], fd, 1e-3,
                           rel < 1e-3);
      rep.rows.push_back(row);
    }
  }
}

NetworkParams sparse_config(const NetworkParams& base) {
  NetworkParams p = base;
  p.lambda_f = 0.0;
  p.lambda_m = 5.093e-6;
  p.fading.nakagami_m = 5;
  p.path_loss.beta = 0.003;
  return p;
}

void optimizer_rows(const NetworkParams& p, const char* tag, bool informational, ValidationReport& rep) {
  const double gamma = db_to_linear(20.0);
  constexpr double kStep = 0.25, kTol = 0.25;
  const auto exh = optimize_tilt_exhaustive(p, gamma, kStep);
  const auto bis = optimize_tilt_bisection(p, gamma, kTol);
  const double ee_bis = ee_homogeneous(p, gamma, bis.theta_opt, Backend::kExact);
  const std::string t(tag);

  rep.rows.push_back(bound_row(t + "theta_deg exhaustive_vs_bisection", exh.theta_opt, bis.theta_opt,
                               std::max(kStep, kTol),
                               std::abs(exh.theta_opt - bis.theta_opt) <= std::max(kStep, kTol) + 1e-12, informational,
                               bis.warning));
  const double gap = (exh.ee_opt - ee_bis) / exh.ee_opt;
  rep.rows.push_back(bound_row(t + "ee exhaustive_vs_bisection", exh.ee_opt, ee_bis, 0.02, gap < 0.02, informational));
  const int bound = bisection_evaluation_bound(bis.range.width(), kTol);
  rep.rows.push_back(bound_row(t + "bisection_evaluations", bound, bis.evaluations, 0.0, bis.evaluations <= bound,
                               informational));
  const double needed = 90.0 / kStep;
  rep.rows.push_back(bound_row(t + "exhaustive_evaluations", needed, exh.evaluations, 0.0, exh.evaluations >= needed,
                               informational));
  const auto range = tilt_range(p, 0.1);
  rep.rows.push_back(bound_row(t + "exhaustive_theta_in_tilt_range", range.theta_max, exh.theta_opt, 0.0,
                               range.contains(exh.theta_opt), true,
                               "upper end of the mean-distance tilt range vs exhaustive argmax"));
}

void suite_optimizer(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  const NetworkParams p = sparse_config(base);
  optimizer_rows(p, "", false, rep);
  NetworkParams quiet = p;
  quiet.sigma2 = 0.0;
  optimizer_rows(quiet, "noise_free ", true, rep);
}

void suite_dominance(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  for (double beta : kBeta) {
    NetworkParams p = base;
    p.lambda_f = 0.0;
    p.lambda_m = 8e-4;
    p.fading.nakagami_m = 1;
    p.path_loss.beta = beta;
    NetworkParams flat = p;
    flat.vertical_pattern = false;
    for (double db : {0.0, 5.0, 10.0, 15.0, 20.0}) {
      const double gamma = db_to_linear(db);
      const auto best = optimize_tilt_exhaustive(p, gamma, 0.25);
      const double fixed = ee_homogeneous(p, gamma, 0.0, Backend::kExact);
      const double no_pattern = ee_homogeneous(flat, gamma, 0.0, Backend::kExact);
      const auto key = std::initializer_list<std::pair<const char*, double>>{{"beta", beta}, {"gamma_db", db}};
      rep.rows.push_back(bound_row(label(key, "ee_opt_ge_zero_tilt"), best.ee_opt, fixed, 0.0,
                                   best.ee_opt >= fixed * (1.0 - 1e-12)));
      rep.rows.push_back(bound_row(label(key, "ee_opt_ge_no_vertical_pattern"), best.ee_opt, no_pattern, 0.0,
                                   best.ee_opt >= no_pattern * (1.0 - 1e-12)));
      if (db == 20.0)
        rep.rows.push_back(bound_row(label(key, "ee_gain_over_zero_tilt"), best.ee_opt / fixed, 2.0, 0.0,
                                     best.ee_opt >= 2.0 * fixed, true, "ratio compared with 2"));
    }
  }
}

void suite_monotonicity(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  for (double beta : kBeta) {
    NetworkParams p = with_femto(base);
    p.path_loss.beta = beta;
    const double gamma = db_to_linear(10.0);
    const double r_max = max_sleep_radius(p);
    std::vector<double> r_cs;
    for (int i = 0; i < 16; ++i) r_cs.push_back(r_max * i / 15.0);
    const auto macro = coverage_macro_hetnet_sweep(p, gamma, kTilt, r_cs);
    const auto femto = coverage_femto_sweep(p, gamma, kTilt, r_cs);
    double worst_macro = 0.0, worst_femto = 0.0;  // largest step against the expected direction
    for (std::size_t j = 1; j < r_cs.size(); ++j) {
      worst_macro = std::max(worst_macro, macro[j - 1].value - macro[j].value);
      worst_femto = std::max(worst_femto, femto[j].value - femto[j - 1].value);
    }
    rep.rows.push_back(bound_row(label({{"beta", beta}}, "macro_nondecreasing_worst_step"), worst_macro, 0.0, 1e-12,
                                 worst_macro <= 1e-12, false,
                                 "macro " + std::to_string(macro.front().value) + " -> " +
                                     std::to_string(macro.back().value)));
    rep.rows.push_back(bound_row(label({{"beta", beta}}, "femto_nonincreasing_worst_step"), worst_femto, 0.0, 1e-12,
                                 worst_femto <= 1e-12, false,
                                 "femto " + std::to_string(femto.front().value) + " -> " +
                                     std::to_string(femto.back().value)));
  }
}

void suite_joint(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  const double gamma = db_to_linear(10.0);
  for (double beta : kBeta) {
    NetworkParams p = with_femto(base);
    p.path_loss.beta = beta;
    const auto exact = optimize_hetnet_joint(p, gamma, gamma, 0.2, 0.7, {}, Backend::kExact);
    const auto approx = optimize_hetnet_joint(p, gamma, gamma, 0.2, 0.7, {}, Backend::kApprox);
    const double achieved = ee_hetnet(p, gamma, gamma, approx.theta_opt, *approx.r_c_opt, Backend::kExact);
    const double ratio = achieved / exact.ee_opt;
    std::ostringstream note;
    note << "exact (" << exact.theta_opt << " deg, " << *exact.r_c_opt << " m) approx (" << approx.theta_opt
         << " deg, " << *approx.r_c_opt << " m)";
    rep.rows.push_back(bound_row(label({{"beta", beta}}, "approx_ee_over_exact_ee"), exact.ee_opt, achieved, 0.05,
                                 exact.feasible && ratio >= 0.95, false, note.str()));
    const double pm = coverage_macro_hetnet(p, gamma, approx.theta_opt, *approx.r_c_opt).value;
    const double pf = coverage_femto(p, gamma, approx.theta_opt, *approx.r_c_opt).value;
    rep.rows.push_back(bound_row(label({{"beta", beta}}, "approx_point_exact_macro_coverage"), 0.8, pm, 0.0, pm >= 0.8,
                                 true));
    rep.rows.push_back(bound_row(label({{"beta", beta}}, "approx_point_exact_femto_coverage"), 0.3, pf, 0.0, pf >= 0.3,
                                 true));
  }
}

void suite_convergence(const NetworkParams& base, const ValidationOptions&, ValidationReport& rep) {
  auto spread = [&](double lambda) {
    NetworkParams p = base;
    p.lambda_m = lambda;
    p.path_loss.beta = 0.003;
    const ServingDistanceDist dist(p.path_loss, lambda);
    const auto [rho0, rho1] = dist.quantile_bounds(0.1);
    return (rho1 - rho0) / dist.mean();
  };
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {1e-6, 1e-5, 1e-4, 1e-3}) {
    const double s = spread(lambda);
    rep.rows.push_back(bound_row(label({{"lambda_m", lambda}}, "relative_quantile_spread"), s, prev, 0.0, s < prev));
    prev = s;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double decade : {1e-6, 1e-5, 1e-4})
    for (double k : {1.0, 2.0, 5.0}) {
      const double s = spread(k * decade);
      rep.rows.push_back(bound_row(label({{"lambda_m", k * decade}}, "relative_quantile_spread_fine"), s, prev, 0.0,
                                   s < prev, true));
      prev = s;
    }
}

}  // namespace

bool ValidationReport::passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.informational && !r.pass; }));
}

const std::vector<std::string>& validation_suites() {
  static const std::vector<std::string> names{"distance",  "macro",     "hetnet",       "bounds", "derivatives",
                                              "optimizer", "dominance", "monotonicity", "joint",  "convergence"};
  return names;
}

ValidationReport run_validation(std::string_view suite, const NetworkParams& base, const ValidationOptions& opt) {
  base.validate();
  ValidationReport rep;
  rep.suite = std::string(suite);
  rep.config_hash = config_hash(base);
  if (suite == "distance") suite_distance(base, opt, rep);
  else if (suite == "macro") suite_macro(base, opt, rep);
  else if (suite == "hetnet") suite_hetnet(base, opt, rep);
  else if (suite == "bounds") suite_bounds(base, opt, rep);
  else if (suite == "derivatives") suite_derivatives(base, opt, rep);
  else if (suite == "optimizer") suite_optimizer(base, opt, rep);
  else if (suite == "dominance") suite_dominance(base, opt, rep);
  else if (suite == "monotonicity") suite_monotonicity(base, opt, rep);
  else if (suite == "joint") suite_joint(base, opt, rep);
  else if (suite == "convergence") suite_convergence(base, opt, rep);
  else throw DomainError("unknown validation suite '" + std::string(suite) + "'");
  return rep;
}

}  // namespace mmwt
