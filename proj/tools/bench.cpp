#include <benchmark/benchmark.h>

#include "qkg/harness.hpp"

using namespace qkg;

static void BM_StarProduct(benchmark::State& st) {
  std::mt19937_64 rng(9);
  CaseCorpus c(rng);
  Series f = c.xpoly(int(st.range(0)), 8), g = c.xpoly(int(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(star(f, g));
}
BENCHMARK(BM_StarProduct)->DenseRange(2, 6, 2);

static void BM_PlaneWave(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(plane_wave(Flavor::kPhiR, int(st.range(0)), int(st.range(0))));
}
BENCHMARK(BM_PlaneWave)->DenseRange(1, 3);

static void BM_Suite(benchmark::State& st) {
  SuiteConfig c;
  c.suite = "continuity-charge";
  Execution ex = st.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(c, ex));
}
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
