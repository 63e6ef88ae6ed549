// Runs every validation suite and prints one verdict line per acceptance criterion.
//
//   mmwt_acceptance [--drops N] [--seed S] [--expected-failures 6,7]
//
// Exit status is 0 when every criterion passes, or when the set of failing criteria equals the
// --expected-failures list exactly.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmwt/validation.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* what;
};

constexpr Criterion kCriteria[] = {
    {1, "distance", "serving distance KS < 0.01, mean within 1%, pdf mass 1 +- 1e-4"},
    {2, "macro", "macro coverage vs simulation, |delta| <= max(0.02, 2 CI95)"},
    {3, "hetnet", "two-tier coverage vs simulation, |delta| <= max(0.03, 2 CI95)"},
    {4, "bounds", "noiseless femto bound <= exact, relative gap < 5%"},
    {5, "derivatives", "Laplace derivatives vs finite differences, rel. error < 1e-3"},
    {6, "optimizer", "bisection within 0.25 deg and 2% EE of exhaustive, evaluation counts"},
    {7, "dominance", "optimized tilt EE >= both fixed-pattern baselines"},
    {8, "monotonicity", "macro coverage up, femto coverage down in sleep radius"},
    {9, "joint", "approx joint optimum within 5% EE of exact"},
    {10, "convergence", "relative serving-distance spread strictly decreasing in density"},
};

std::string describe_failures(const mmwt::ValidationReport& rep) {
  std::ostringstream os;
  int shown = 0;
  for (const auto& r : rep.rows) {
    if (r.informational || r.pass) continue;
    if (shown++ == 3) {
      os << " ...";
      break;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, " [%s: %.6g vs %.6g, tol %.3g]", r.quantity.c_str(), r.analytic, r.empirical,
                  r.tolerance);
    os << buf;
  }
  return os.str();
}

// Context rows; long lists collapse to their largest difference.
void print_info(const mmwt::ValidationReport& rep) {
  std::vector<const mmwt::ValidationRow*> info;
  for (const auto& r : rep.rows)
    if (r.informational) info.push_back(&r);
  if (info.size() <= 8) {
    for (const auto* r : info)
      std::printf("    info %s: %.6g / %.6g%s%s\n", r->quantity.c_str(), r->analytic, r->empirical,
                  r->note.empty() ? "" : "  ", r->note.c_str());
    return;
  }
  const auto* worst = *std::max_element(info.begin(), info.end(), [](const auto* a, const auto* b) {
    return std::abs(a->analytic - a->empirical) < std::abs(b->analytic - b->empirical);
  });
  std::printf("    info %zu rows (%s), largest difference %.4g at %s\n", info.size(), worst->note.c_str(),
              std::abs(worst->analytic - worst->empirical), worst->quantity.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  mmwt::ValidationOptions opt;
  if (const char* env = std::getenv("MMWT_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--drops") && i + 1 < argc) {
      opt.n_drops = std::atoll(argv[++i]);
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--expected-failures") && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string id; std::getline(ss, id, ',');) expected.insert(std::atoi(id.c_str()));
    } else {
      std::fprintf(stderr, "usage: %s [--drops N] [--seed S] [--expected-failures a,b,...]\n", argv[0]);
      return 1;
    }
  }

  const mmwt::NetworkParams base;
  std::set<int> failed;
  for (const auto& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = mmwt::run_validation(c.suite, base, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = rep.passed();
    if (!pass) failed.insert(c.id);
    std::printf("criterion %d: %s  %s (%zu checks, %zu failed, %.1f s)%s\n", c.id, pass ? "PASS" : "FAIL", c.what,
                rep.rows.size(), rep.failures(), secs, pass ? "" : describe_failures(rep).c_str());
    print_info(rep);
    std::fflush(stdout);
  }

  std::printf("%zu of 10 criteria passed\n", 10 - failed.size());
  if (failed.empty()) return 0;
  if (!expected.empty() && failed == expected) {
    std::printf("failing set matches the expected failures\n");
    return 0;
  }
  return 1;
}
