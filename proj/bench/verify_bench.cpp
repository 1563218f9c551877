// Case fan-out: serial reference runner against the OpenMP runner.
#include "supermap/verify.hpp"

#include <benchmark/benchmark.h>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace supermap;

namespace {

const char* const kSuites[] = {"grassmann", "superfun", "morphism", "jetcalc", "geometry", "mapspace"};

verify::Options options(int cases) {
  verify::Options o;
  o.cases = cases;
  return o;
}

void BM_Serial(benchmark::State& state) {
  const std::string suite = kSuites[state.range(0)];
  const auto o = options(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_cases_serial(suite, o));
  state.SetLabel(suite);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Parallel(benchmark::State& state) {
  const std::string suite = kSuites[state.range(0)];
  const auto o = options(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_cases_parallel(suite, o));
#ifdef _OPENMP
  state.SetLabel(suite + " threads=" + std::to_string(omp_get_max_threads()));
#else
  state.SetLabel(suite);
#endif
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void args(benchmark::internal::Benchmark* b) {
  for (int s = 0; s < 6; ++s) b->Args({s, 64});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Serial)->Apply(args);
BENCHMARK(BM_Parallel)->Apply(args);

BENCHMARK_MAIN();
