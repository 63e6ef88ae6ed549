#include <benchmark/benchmark.h>

#include <vector>

#include "mmwt/coverage.hpp"
#include "mmwt/laplace.hpp"
#include "mmwt/monte_carlo.hpp"
#include "mmwt/optimize.hpp"

namespace {

void BM_LaplaceDerivatives(benchmark::State& state) {
  mmwt::NetworkParams p;
  p.fading.nakagami_m = static_cast<int>(state.range(0));
  const auto lt = mmwt::macro_interference(p, 80.0);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto _ : state) {
    lt.scaled_derivatives(1e9, 5.0, a);
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_LaplaceDerivatives)->Arg(1)->Arg(3)->Arg(5);

void BM_CoverageHomogeneous(benchmark::State& state) {
  mmwt::NetworkParams p;
  p.fading.nakagami_m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mmwt::coverage_homogeneous(p, 10.0, 5.0).value);
}
BENCHMARK(BM_CoverageHomogeneous)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CoverageHomogeneousApprox(benchmark::State& state) {
  mmwt::NetworkParams p;
  for (auto _ : state) benchmark::DoNotOptimize(mmwt::coverage_homogeneous_approx(p, 10.0, 5.0).value);
}
BENCHMARK(BM_CoverageHomogeneousApprox)->Unit(benchmark::kMicrosecond);

void BM_CoverageFemto(benchmark::State& state) {
  mmwt::NetworkParams p;
  p.lambda_f = 10 * p.lambda_m;
  for (auto _ : state) benchmark::DoNotOptimize(mmwt::coverage_femto(p, 10.0, 5.0, 20.0).value);
}
BENCHMARK(BM_CoverageFemto)->Unit(benchmark::kMillisecond);

void BM_TiltBisection(benchmark::State& state) {
  mmwt::NetworkParams p;
  for (auto _ : state) benchmark::DoNotOptimize(mmwt::optimize_tilt_bisection(p, 10.0).theta_opt);
}
BENCHMARK(BM_TiltBisection)->Unit(benchmark::kMillisecond);

void BM_DropsHomogeneous(benchmark::State& state) {
  mmwt::NetworkParams p;
  mmwt::DropConfig drop;
  drop.n_drops = state.range(0);
  drop.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mmwt::drop_homogeneous(p, drop, 10.0, 5.0).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DropsHomogeneous)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
