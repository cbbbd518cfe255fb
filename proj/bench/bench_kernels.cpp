// Serial reference vs OpenMP kernels on the fixtures used by the acceptance run.
#include "crs/crowns.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace crs;

namespace {

const CurveSample& spiral_fixture() {
  static const CurveSample s = spiral_curve(0.3, -4.0, 4.0, 300);
  return s;
}

const LimitSetSample& limit_fixture() {
  static const LimitSetSample s = subsample(limit_set(triangle_group({3, 3, 4, 2.6}), 10, 1e-3), 200);
  return s;
}

const Crown& crown_fixture() {
  static const Crown c = build_crown(triangle_group({3, 3, 4, std::numbers::pi}), kTauWord, 6);
  return c;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_SupCartanSpiral(benchmark::State& st) {
  const auto& e = spiral_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(sup_cartan(e, false, exec_of(st)).sup_estimate);
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_SupCartanLimitSet(benchmark::State& st) {
  const auto& e = limit_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(sup_cartan(e, false, exec_of(st)).sup_estimate);
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_Hyperconvexity(benchmark::State& st) {
  const auto& e = spiral_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(hyperconvexity(e.points, exec_of(st)).min_collinearity);
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_Embeddedness(benchmark::State& st) {
  const auto& c = crown_fixture();
  for (auto _ : st)
    benchmark::DoNotOptimize(embeddedness(c, std::numeric_limits<double>::infinity(), exec_of(st)).min_margin);
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_SupCartanSpiral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SupCartanLimitSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Hyperconvexity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Embeddedness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
