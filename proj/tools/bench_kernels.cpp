// Serial reference vs OpenMP kernels: phase-grid evaluation, the full
// radius search, and a small verification sweep.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "wnr/ensemble.hpp"
#include "wnr/harness.hpp"
#include "wnr/phase_search.hpp"
#include "wnr/radius.hpp"

namespace {

using namespace wnr;

ComplexMatrix sample(int n) { return generate({"ginibre", n, 1.0, 42}); }

void BM_GridSerial(benchmark::State &st) {
  const HermitianPartEvaluator eval(sample(static_cast<int>(st.range(0))));
  for (auto _ : st)
    benchmark::DoNotOptimize(evaluate_grid_serial(eval, 512));
  st.SetItemsProcessed(st.iterations() * 512);
}

void BM_GridParallel(benchmark::State &st) {
  const HermitianPartEvaluator eval(sample(static_cast<int>(st.range(0))));
  for (auto _ : st)
    benchmark::DoNotOptimize(evaluate_grid_parallel(eval, 512));
  st.SetItemsProcessed(st.iterations() * 512);
}

void radius(benchmark::State &st, bool parallel) {
  const ComplexMatrix t = sample(static_cast<int>(st.range(0)));
  RadiusOptions opt;
  opt.parallel = parallel;
  for (auto _ : st)
    benchmark::DoNotOptimize(search_numerical_radius(t, opt));
}

void BM_RadiusSerial(benchmark::State &st) { radius(st, false); }
void BM_RadiusParallel(benchmark::State &st) { radius(st, true); }

void sweep(benchmark::State &st, int threads) {
  SweepConfig cfg;
  cfg.dims = {3};
  cfg.trials = 4;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : st)
    benchmark::DoNotOptimize(run_sweep(cfg));
  omp_set_num_threads(saved);
}

void BM_SweepOneThread(benchmark::State &st) { sweep(st, 1); }
void BM_SweepAllThreads(benchmark::State &st) { sweep(st, omp_get_num_procs()); }

} // namespace

BENCHMARK(BM_GridSerial)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_GridParallel)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_RadiusSerial)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_RadiusParallel)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_SweepOneThread)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepAllThreads)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
