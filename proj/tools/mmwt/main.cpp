// mmwt: coverage, energy efficiency and tilt optimization for tilted mmWave networks.
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "mmwt/errors.hpp"

using namespace mmwt::cli;

namespace {

void add_global(CLI::App* cmd, GlobalOptions& g) {
  cmd->add_option("--config", g.config, "Configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", g.set, "Override one entry, section.key=value (repeatable)");
  cmd->add_option("-o,--output", g.output, "CSV output path (default stdout)");
  cmd->add_option("--emit-plot-script", g.plot_script, "Also write a matplotlib script for the CSV");
  cmd->add_option("--threads", g.threads, "Worker threads (0: all cores)");
}

void add_sweep(CLI::App* cmd, SweepOptions& s) {
  cmd->add_option("--sweep", s.variable, "Swept variable")->check(CLI::IsMember(kSweepVariables));
  cmd->add_option("--start", s.start, "First sweep value");
  cmd->add_option("--stop", s.stop, "Last sweep value");
  cmd->add_option("--steps", s.steps, "Number of sweep values (>= 2)");
  cmd->add_flag("--log", s.log, "Logarithmic sweep spacing");
}

void add_operating(CLI::App* cmd, OperatingPoint& op) {
  cmd->add_option("--scenario", op.scenario, "homogeneous, hetnet or auto")
      ->check(CLI::IsMember({"homogeneous", "hetnet", "auto"}));
  cmd->add_option("--backend", op.backend, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  cmd->add_option("--gamma-db", op.gamma_db, "SINR threshold (macro users), dB");
  cmd->add_option("--gamma-f-db", op.gamma_f_db, "SINR threshold of femto users, dB (default --gamma-db)");
  cmd->add_option("--theta", op.theta_tilt_deg, "Downtilt, degrees");
  cmd->add_option("--r-c", op.r_c_m, "Sleep radius, m");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage and energy efficiency of tilted mmWave networks"};
  app.require_subcommand(1);

  GlobalOptions g;
  SweepOptions s;
  OperatingPoint op;
  DistOptions dist;
  CoverageCmdOptions cov;
  cov.seed = default_seed();
  EeOptions ee;
  OptimizeOptions opt;
  ValidateOptions val;
  val.seed = default_seed();

  auto* c_dist = app.add_subcommand("dist", "Serving-distance statistics and admissible tilt ranges");
  add_global(c_dist, g);
  add_sweep(c_dist, s);
  c_dist->add_option("--epsilon", dist.epsilon, "Probability mass outside the distance interval");

  auto* c_cov = app.add_subcommand("coverage", "Coverage probability");
  add_global(c_cov, g);
  add_sweep(c_cov, s);
  add_operating(c_cov, op);
  c_cov->add_flag("--lower-bound", cov.lower_bound, "Add the closed-form femto lower bound");
  c_cov->add_option("--mc-drops", cov.mc_drops, "Also simulate this many drops");
  c_cov->add_option("--seed", cov.seed, "Simulation seed (default MMWT_SEED or 1)");
  c_cov->add_flag("--thinned-holes", cov.thinned_holes, "Independent thinning instead of exact sleep holes");

  auto* c_ee = app.add_subcommand("ee", "Energy efficiency at the best tilt and two baselines");
  add_global(c_ee, g);
  add_sweep(c_ee, s);
  add_operating(c_ee, op);
  c_ee->add_option("--theta-step", ee.theta_step, "Tilt grid step, degrees");
  c_ee->add_option("--tol", ee.tol, "Bisection bracket tolerance, degrees");
  c_ee->add_option("--epsilon", ee.epsilon, "Distance mass outside the general tilt range");
  c_ee->add_option("--baseline", ee.baselines, "Reference columns: a (zero tilt), b (no vertical pattern)")
      ->check(CLI::IsMember({"a", "b"}));

  auto* c_opt = app.add_subcommand("optimize", "Optimal tilt (and sleep radius for two tiers)");
  add_global(c_opt, g);
  add_operating(c_opt, op);
  c_opt->add_option("--method", opt.method, "exhaustive or bisection (single tier)")
      ->check(CLI::IsMember({"exhaustive", "bisection"}));
  c_opt->add_option("--theta-step", opt.theta_step, "Tilt grid step, degrees");
  c_opt->add_option("--tol", opt.tol, "Bisection bracket tolerance, degrees");
  c_opt->add_option("--epsilon", opt.epsilon, "Distance mass outside the general tilt range");
  c_opt->add_flag("--general-range", opt.general_range, "Bisect over the quantile-based tilt range");
  c_opt->add_option("--eps-m", opt.eps_m, "Macro outage allowance (coverage >= 1 - eps)");
  c_opt->add_option("--eps-f", opt.eps_f, "Femto outage allowance (coverage >= 1 - eps)");
  c_opt->add_option("--r-c-step", opt.r_c_step, "Sleep radius grid step, m (0: max radius / 64)");
  c_opt->add_option("--trace", opt.trace, "Write every evaluated point to this CSV");

  auto* c_val = app.add_subcommand("validate", "Analytic versus simulated and reference checks");
  add_global(c_val, g);
  c_val->add_option("--suite", val.suite, "Suite name, comma list, or all");
  c_val->add_option("--drops", val.drops, "Drops per simulated estimate");
  c_val->add_option("--samples", val.samples, "Serving-distance samples");
  c_val->add_option("--seed", val.seed, "Simulation seed (default MMWT_SEED or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_dist) return cmd_dist(g, s, dist);
    if (*c_cov) return cmd_coverage(g, s, op, cov);
    if (*c_ee) return cmd_ee(g, s, op, ee);
    if (*c_opt) return cmd_optimize(g, op, opt);
    if (*c_val) return cmd_validate(g, val);
  } catch (const mmwt::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mmwt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
