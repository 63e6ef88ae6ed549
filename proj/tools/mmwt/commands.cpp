#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "mmwt/config.hpp"
#include "mmwt/coverage.hpp"
#include "mmwt/distance.hpp"
#include "mmwt/energy.hpp"
#include "mmwt/errors.hpp"
#include "mmwt/monte_carlo.hpp"
#include "mmwt/optimize.hpp"
#include "mmwt/parallel.hpp"
#include "mmwt/validation.hpp"
#include "table.hpp"

namespace mmwt::cli {

NetworkParams GlobalOptions::resolve() const {
  NetworkParams p = config.empty() ? NetworkParams{} : load_params(config);
  for (const auto& kv : set) apply_override(p, kv);
  p.validate();
  return p;
}

std::vector<double> SweepOptions::values() const {
  if (!active()) return {};
  if (std::find(kSweepVariables.begin(), kSweepVariables.end(), variable) == kSweepVariables.end())
    throw DomainError("unknown sweep variable '" + variable + "'");
  if (steps < 2) throw DomainError("--steps must be at least 2");
  if (!(start < stop)) throw DomainError("--start must be below --stop");
  if (log && start <= 0.0) throw DomainError("log spacing needs a positive --start");
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    v[i] = log ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  v.back() = stop;
  return v;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MMWT_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return (end && *end == '\0') ? v : 1;
}

namespace {

// One evaluation point: parameters plus thresholds (linear), tilt and sleep radius.
struct Point {
  NetworkParams p;
  double x = std::numeric_limits<double>::quiet_NaN();
  double gamma_m = 1.0;
  double gamma_f = 1.0;
  double theta = 0.0;
  double r_c = 0.0;
  bool hetnet = false;
};

bool is_hetnet(const std::string& scenario, const NetworkParams& p) {
  if (scenario == "homogeneous") return false;
  if (scenario == "hetnet") return true;
  if (scenario == "auto") return p.lambda_f > 0.0;
  throw DomainError("unknown scenario '" + scenario + "' (homogeneous, hetnet, auto)");
}

Point make_point(const NetworkParams& base, const OperatingPoint& op, const std::string& var, double x) {
  Point pt;
  pt.p = base;
  double gm_db = op.gamma_db;
  double gf_db = op.gamma_f_db.value_or(op.gamma_db);
  pt.theta = op.theta_tilt_deg;
  pt.r_c = op.r_c_m;
  if (var == "gamma_db") {
    gm_db = x;
    if (!op.gamma_f_db) gf_db = x;
  } else if (var == "theta_tilt_deg") {
    pt.theta = x;
  } else if (var == "r_c_m") {
    pt.r_c = x;
  } else if (var == "lambda_m") {
    pt.p.lambda_m = x;
  } else if (var == "lambda_f") {
    pt.p.lambda_f = x;
  } else if (var == "beta") {
    pt.p.path_loss.beta = x;
  }
  pt.x = x;
  pt.p.validate();
  pt.gamma_m = db_to_linear(gm_db);
  pt.gamma_f = db_to_linear(gf_db);
  pt.hetnet = is_hetnet(op.scenario, pt.p);
  if (pt.hetnet && pt.p.lambda_f <= 0.0) throw DomainError("hetnet scenario needs lambda_f > 0");
  if (pt.theta < 0.0 || pt.theta > 90.0) throw DomainError("tilt must lie in [0, 90] degrees");
  if (pt.hetnet) check_sleep_radius(pt.p, pt.r_c);
  return pt;
}

std::vector<Point> make_points(const NetworkParams& base, const SweepOptions& s, const OperatingPoint& op) {
  std::vector<Point> pts;
  if (!s.active()) {
    pts.push_back(make_point(base, op, "", 0.0));
    return pts;
  }
  for (double x : s.values()) pts.push_back(make_point(base, op, s.variable, x));
  return pts;
}

std::string x_column(const SweepOptions& s) { return s.active() ? s.variable : "row"; }

std::string x_value(const SweepOptions& s, const Point& pt, std::size_t i) {
  return s.active() ? num(pt.x) : std::to_string(i);
}

void add_command_comment(Table& t, const std::string& command, const SweepOptions& s) {
  std::string line = "mmwt " + command;
  if (s.active())
    line += " sweep " + s.variable + " from " + num(s.start) + " to " + num(s.stop) + " in " +
            std::to_string(s.steps) + (s.log ? " log" : " linear") + " steps";
  t.comment(line);
}

void add_operating_comment(Table& t, const OperatingPoint& op) {
  t.comment("gamma_db=" + num(op.gamma_db));
  if (op.gamma_f_db) t.comment("gamma_f_db=" + num(*op.gamma_f_db));
  t.comment("theta_tilt_deg=" + num(op.theta_tilt_deg));
  t.comment("r_c_m=" + num(op.r_c_m));
  t.comment("scenario=" + op.scenario);
  t.comment("backend=" + op.backend);
}

void finish(const Table& t, const GlobalOptions& g, const std::string& title) {
  t.save(g.output);
  if (g.plot_script.empty()) return;
  std::ofstream out(g.plot_script);
  if (!out) throw std::runtime_error("cannot write " + g.plot_script);
  out << plot_script(g.output.empty() || g.output == "-" ? "mmwt.csv" : g.output, title);
}

// Fills rows[i] for every point, in parallel; rows are written in index order afterwards.
template <typename Fn>
std::vector<std::vector<std::string>> compute_rows(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<std::vector<std::string>> rows(n);
  parallel_chunks(n, threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) rows[i] = fn(i);
  });
  return rows;
}

OperatingPoint homogeneous_op() {
  OperatingPoint op;
  op.scenario = "homogeneous";
  return op;
}

}  // namespace

int cmd_dist(const GlobalOptions& g, const SweepOptions& s, const DistOptions& o) {
  if (s.active() && s.variable != "lambda_m" && s.variable != "beta")
    throw DomainError("dist sweeps lambda_m or beta only");
  if (!(o.epsilon > 0.0 && o.epsilon < 1.0)) throw DomainError("--epsilon must lie in (0, 1)");
  const NetworkParams base = g.resolve();
  const auto pts = make_points(base, s, homogeneous_op());

  Table t({x_column(s), "rho0_m", "rho_mean_m", "rho1_m", "relative_spread", "theta_min_dense_deg",
           "theta_max_dense_deg", "theta_min_general_deg", "theta_max_general_deg", "config_hash"});
  add_command_comment(t, "dist", s);
  t.comment("epsilon=" + num(o.epsilon));
  t.describe(base);
  auto rows = compute_rows(pts.size(), g.threads, [&](std::size_t i) {
    const auto& pt = pts[i];
    ServingDistanceDist d(pt.p.path_loss, pt.p.lambda_m);
    const auto [r0, r1] = d.quantile_bounds(o.epsilon);
    const TiltRange dense = tilt_range(pt.p, o.epsilon, TiltRangeMode::kDense);
    const TiltRange general = tilt_range(pt.p, o.epsilon, TiltRangeMode::kGeneral);
    return std::vector<std::string>{x_value(s, pt, i), num(r0), num(d.mean()), num(r1), num((r1 - r0) / d.mean()),
                                    num(dense.theta_min), num(dense.theta_max), num(general.theta_min),
                                    num(general.theta_max), config_hash(pt.p)};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  finish(t, g, "serving distance");
  return kExitOk;
}

int cmd_coverage(const GlobalOptions& g, const SweepOptions& s, const OperatingPoint& op,
                 const CoverageCmdOptions& o) {
  const Backend backend = parse_backend(op.backend);
  if (o.mc_drops < 0) throw DomainError("--mc-drops must be non-negative");
  const NetworkParams base = g.resolve();
  const auto pts = make_points(base, s, op);
  const bool hetnet = pts.front().hetnet;
  const bool mc = o.mc_drops > 0;

  std::vector<std::string> cols{x_column(s)};
  if (hetnet) {
    cols.insert(cols.end(), {"macro_coverage", "femto_coverage"});
    if (o.lower_bound) cols.push_back("femto_lower_bound");
    if (mc) cols.insert(cols.end(), {"mc_macro", "mc_macro_ci95", "mc_femto", "mc_femto_ci95"});
  } else {
    cols.push_back("coverage");
    if (mc) cols.insert(cols.end(), {"mc_coverage", "mc_ci95"});
  }
  cols.insert(cols.end(), {"method", "config_hash"});
  Table t(cols);
  add_command_comment(t, "coverage", s);
  add_operating_comment(t, op);
  if (mc) t.comment("mc_drops=" + std::to_string(o.mc_drops) + " seed=" + std::to_string(o.seed));
  t.describe(base);

  auto analytic = [&](const Point& pt) {
    std::vector<std::string> r;
    std::string method;
    if (hetnet) {
      CoverageResult macro, femto;
      if (backend == Backend::kApprox) {
        const auto h = coverage_hetnet_approx(pt.p, pt.gamma_m, pt.gamma_f, pt.theta, pt.r_c);
        macro = h.macro;
        femto = h.femto;
      } else {
        macro = coverage_macro_hetnet(pt.p, pt.gamma_m, pt.theta, pt.r_c);
        femto = coverage_femto(pt.p, pt.gamma_f, pt.theta, pt.r_c);
      }
      r = {num(macro.value), num(femto.value)};
      if (o.lower_bound) r.push_back(num(coverage_femto_lower_bound(pt.p, pt.gamma_f, pt.r_c).value));
      method = std::string(to_string(macro.method));
    } else {
      const auto c = backend == Backend::kApprox ? coverage_homogeneous_approx(pt.p, pt.gamma_m, pt.theta)
                                                 : coverage_homogeneous(pt.p, pt.gamma_m, pt.theta);
      r = {num(c.value)};
      method = std::string(to_string(c.method));
    }
    return std::make_pair(r, method);
  };

  std::vector<std::vector<std::string>> rows;
  if (!mc) {
    rows = compute_rows(pts.size(), g.threads, [&](std::size_t i) {
      auto [r, method] = analytic(pts[i]);
      std::vector<std::string> row{x_value(s, pts[i], i)};
      row.insert(row.end(), r.begin(), r.end());
      row.insert(row.end(), {method, config_hash(pts[i].p)});
      return row;
    });
  } else {
    // Simulation rows run one after another; the drops themselves use the thread pool.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& pt = pts[i];
      auto [r, method] = analytic(pt);
      DropConfig drop;
      drop.n_drops = o.mc_drops;
      drop.rng_seed = o.seed;
      drop.threads = g.threads;
      drop.exact_hole_process = !o.thinned_holes;
      std::vector<std::string> row{x_value(s, pt, i)};
      row.insert(row.end(), r.begin(), r.end());
      if (hetnet) {
        drop.scenario = Scenario::kHetNet;
        const auto e = drop_hetnet(pt.p, drop, pt.gamma_m, pt.gamma_f, pt.theta, pt.r_c);
        row.insert(row.end(), {num(e.macro.mean), num(e.macro.ci95_halfwidth), num(e.femto.mean),
                               num(e.femto.ci95_halfwidth)});
      } else {
        const auto e = drop_homogeneous(pt.p, drop, pt.gamma_m, pt.theta);
        row.insert(row.end(), {num(e.mean), num(e.ci95_halfwidth)});
      }
      row.insert(row.end(), {method, config_hash(pt.p)});
      rows.push_back(std::move(row));
    }
  }
  for (auto& r : rows) t.add_row(std::move(r));
  finish(t, g, "coverage");
  return kExitOk;
}

namespace {

struct HetNetTiltBest {
  double theta = 0.0;
  double ee = -1.0;
};

HetNetTiltBest best_hetnet_tilt(const Point& pt, Backend backend, double step, unsigned threads) {
  const auto thetas = grid_points(0.0, 90.0, step);
  std::vector<double> ee(thetas.size());
  parallel_chunks(thetas.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) ee[i] = ee_hetnet(pt.p, pt.gamma_m, pt.gamma_f, thetas[i], pt.r_c, backend);
  });
  const auto it = std::max_element(ee.begin(), ee.end());
  return {thetas[static_cast<std::size_t>(it - ee.begin())], *it};
}

}  // namespace

int cmd_ee(const GlobalOptions& g, const SweepOptions& s, const OperatingPoint& op, const EeOptions& o) {
  const Backend backend = parse_backend(op.backend);
  if (!(o.theta_step > 0.0) || !(o.tol > 0.0)) throw DomainError("--theta-step and --tol must be positive");
  const NetworkParams base = g.resolve();
  const auto pts = make_points(base, s, op);
  const bool hetnet = pts.front().hetnet;
  const bool tilt_sweep = s.active() && s.variable == "theta_tilt_deg";
  auto wants = [&](const char* b) { return std::find(o.baselines.begin(), o.baselines.end(), b) != o.baselines.end(); };
  const bool want_a = wants("a"), want_b = wants("b");

  std::vector<std::string> cols{x_column(s)};
  if (tilt_sweep) {
    cols.insert(cols.end(), {"ee_exact", "ee_approx"});
    if (!hetnet) cols.insert(cols.end(), {"theta_exhaustive_deg", "theta_bisection_deg", "theta_min_deg", "theta_max_deg"});
  } else {
    cols.insert(cols.end(), {"ee_opt_tilt", "theta_opt_deg"});
    if (want_a) cols.push_back("ee_2dbf_a");
    if (want_b) cols.push_back("ee_2dbf_b");
  }
  cols.push_back("config_hash");
  Table t(cols);
  add_command_comment(t, "ee", s);
  add_operating_comment(t, op);
  t.comment("ee_2dbf_a: zero tilt; ee_2dbf_b: no vertical pattern");
  t.describe(base);

  if (tilt_sweep) {
    std::vector<std::string> tail;
    if (!hetnet) {
      // Optima do not depend on the swept tilt; computed once for reference columns.
      const Point& ref = pts.front();
      const auto ex = optimize_tilt_exhaustive(ref.p, ref.gamma_m, o.theta_step, std::nullopt, {.threads = g.threads});
      const auto bi = optimize_tilt_bisection(ref.p, ref.gamma_m, o.tol, o.epsilon, TiltRangeMode::kDense,
                                              {.threads = g.threads});
      tail = {num(ex.theta_opt), num(bi.theta_opt), num(bi.range.theta_min), num(bi.range.theta_max)};
    }
    auto rows = compute_rows(pts.size(), g.threads, [&](std::size_t i) {
      const auto& pt = pts[i];
      double exact, approx;
      if (hetnet) {
        exact = ee_hetnet(pt.p, pt.gamma_m, pt.gamma_f, pt.theta, pt.r_c, Backend::kExact);
        approx = ee_hetnet(pt.p, pt.gamma_m, pt.gamma_f, pt.theta, pt.r_c, Backend::kApprox);
      } else {
        exact = ee_homogeneous(pt.p, pt.gamma_m, pt.theta, Backend::kExact);
        approx = ee_homogeneous(pt.p, pt.gamma_m, pt.theta, Backend::kApprox);
      }
      std::vector<std::string> row{x_value(s, pt, i), num(exact), num(approx)};
      row.insert(row.end(), tail.begin(), tail.end());
      row.push_back(config_hash(pt.p));
      return row;
    });
    for (auto& r : rows) t.add_row(std::move(r));
    finish(t, g, "energy efficiency");
    return kExitOk;
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& pt = pts[i];
    double ee_opt, theta_opt, ee_a = 0.0, ee_b = 0.0;
    NetworkParams flat = pt.p;
    flat.vertical_pattern = false;
    if (hetnet) {
      const auto best = best_hetnet_tilt(pt, backend, o.theta_step, g.threads);
      theta_opt = best.theta;
      ee_opt = ee_hetnet(pt.p, pt.gamma_m, pt.gamma_f, theta_opt, pt.r_c, Backend::kExact);
      if (want_a) ee_a = ee_hetnet(pt.p, pt.gamma_m, pt.gamma_f, 0.0, pt.r_c, Backend::kExact);
      if (want_b) ee_b = ee_hetnet(flat, pt.gamma_m, pt.gamma_f, 0.0, pt.r_c, Backend::kExact);
    } else {
      const auto out = backend == Backend::kApprox
                           ? optimize_tilt_bisection(pt.p, pt.gamma_m, o.tol, o.epsilon, TiltRangeMode::kDense,
                                                     {.threads = g.threads})
                           : optimize_tilt_exhaustive(pt.p, pt.gamma_m, o.theta_step, std::nullopt,
                                                      {.threads = g.threads});
      theta_opt = out.theta_opt;
      ee_opt = ee_homogeneous(pt.p, pt.gamma_m, theta_opt, Backend::kExact);
      if (want_a) ee_a = ee_homogeneous(pt.p, pt.gamma_m, 0.0, Backend::kExact);
      if (want_b) ee_b = ee_homogeneous(flat, pt.gamma_m, 0.0, Backend::kExact);
    }
    std::vector<std::string> row{x_value(s, pt, i), num(ee_opt), num(theta_opt)};
    if (want_a) row.push_back(num(ee_a));
    if (want_b) row.push_back(num(ee_b));
    row.push_back(config_hash(pt.p));
    t.add_row(std::move(row));
  }
  finish(t, g, "energy efficiency");
  return kExitOk;
}

int cmd_optimize(const GlobalOptions& g, const OperatingPoint& op, const OptimizeOptions& o) {
  const Backend backend = parse_backend(op.backend);
  const NetworkParams base = g.resolve();
  const Point pt = make_point(base, op, "", 0.0);
  const OptimizerOptions oo{.threads = g.threads};

  OptimizationOutcome out;
  int bound = -1;
  if (pt.hetnet) {
    if (!(o.eps_m >= 0.0 && o.eps_m <= 1.0 && o.eps_f >= 0.0 && o.eps_f <= 1.0))
      throw DomainError("--eps-m and --eps-f must lie in [0, 1]");
    out = optimize_hetnet_joint(pt.p, pt.gamma_m, pt.gamma_f, o.eps_m, o.eps_f, {o.theta_step, o.r_c_step}, backend,
                                oo);
  } else if (o.method == "exhaustive") {
    out = optimize_tilt_exhaustive(pt.p, pt.gamma_m, o.theta_step, std::nullopt, oo);
  } else if (o.method == "bisection") {
    const auto mode = o.general_range ? TiltRangeMode::kGeneral : TiltRangeMode::kDense;
    out = optimize_tilt_bisection(pt.p, pt.gamma_m, o.tol, o.epsilon, mode, oo);
    bound = bisection_evaluation_bound(out.range.width(), o.tol);
  } else {
    throw DomainError("unknown method '" + o.method + "' (exhaustive, bisection)");
  }

  Table t({"method", "theta_opt_deg", "r_c_opt_m", "ee_opt", "evaluations", "evaluation_bound", "feasible",
           "non_unimodal", "theta_min_deg", "theta_max_deg", "warning", "config_hash"});
  t.comment("mmwt optimize");
  add_operating_comment(t, op);
  if (pt.hetnet) t.comment("eps_m=" + num(o.eps_m) + " eps_f=" + num(o.eps_f));
  t.describe(pt.p);
  t.add_row({std::string(to_string(out.method)), num(out.theta_opt), out.r_c_opt ? num(*out.r_c_opt) : "",
             num(out.ee_opt), std::to_string(out.evaluations), bound >= 0 ? std::to_string(bound) : "",
             out.feasible ? "1" : "0", out.non_unimodal ? "1" : "0", num(out.range.theta_min),
             num(out.range.theta_max), out.warning, config_hash(pt.p)});
  finish(t, g, "optimum");

  if (!o.trace.empty()) {
    Table tr({"step", "theta_deg", "r_c_m", "ee", "macro_coverage", "femto_coverage", "feasible"});
    tr.comment("mmwt optimize trace, method=" + std::string(to_string(out.method)));
    tr.describe(pt.p);
    for (std::size_t i = 0; i < out.trace.size(); ++i) {
      const auto& tp = out.trace[i];
      tr.add_row({std::to_string(i), num(tp.theta), num(tp.r_c), num(tp.ee), num(tp.macro_coverage),
                  num(tp.femto_coverage), tp.feasible ? "1" : "0"});
    }
    tr.save(o.trace);
  }
  if (!out.warning.empty()) std::cerr << "warning: " << out.warning << '\n';
  return out.feasible ? kExitOk : kExitInfeasible;
}

int cmd_validate(const GlobalOptions& g, const ValidateOptions& o) {
  const NetworkParams base = g.resolve();
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = validation_suites();
  } else {
    std::stringstream ss(o.suite);
    for (std::string name; std::getline(ss, name, ',');) suites.push_back(name);
  }
  const ValidationOptions vo{o.drops, o.samples, o.seed, g.threads};

  Table t({"config_hash", "suite", "quantity", "analytic", "empirical", "ci95", "tolerance", "pass", "note"});
  t.comment("mmwt validate drops=" + std::to_string(o.drops) + " samples=" + std::to_string(o.samples) +
            " seed=" + std::to_string(o.seed));
  t.describe(base);
  bool ok = true;
  for (const auto& name : suites) {
    const auto rep = run_validation(name, base, vo);
    ok = ok && rep.passed();
    for (const auto& r : rep.rows) {
      t.add_row({rep.config_hash, rep.suite, r.quantity, num(r.analytic), num(r.empirical), num(r.ci95),
                 num(r.tolerance), r.informational ? "info" : (r.pass ? "pass" : "fail"), r.note});
    }
    std::cerr << rep.suite << ": " << (rep.passed() ? "pass" : "FAIL") << " (" << rep.failures() << " failed rows)\n";
  }
  finish(t, g, "validation");
  return ok ? kExitOk : kExitValidation;
}

}  // namespace mmwt::cli
