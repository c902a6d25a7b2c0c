// Serial reference against the OpenMP kernels: multi-start search and scans.
// Parallel variants take the thread count as their argument.

#include <cstdlib>
#include <numbers>
#include <string>

#include <benchmark/benchmark.h>

#include "biquot/report.hpp"
#include "biquot/search.hpp"

namespace {

using namespace biquot;

SearchOptions search_options() {
  SearchOptions opts;
  opts.starts = 32;
  opts.iterations = 500;
  opts.seed = 1;
  return opts;
}

ScanOptions scan_options() {
  ScanOptions opts;
  opts.from = 0.05;
  opts.to = std::numbers::pi / 6 - 0.01;
  opts.steps = 8;
  opts.starts = 8;
  opts.seed = 1;
  return opts;
}

void set_threads(benchmark::State& state) {
  setenv("BIQUOT_THREADS", std::to_string(state.range(0)).c_str(), 1);
}

void BM_SearchSerial(benchmark::State& state) {
  const SearchOptions opts = search_options();
  for (auto _ : state) benchmark::DoNotOptimize(search_zero_plane_serial(std::numbers::pi / 12, opts).min_residual);
}

void BM_SearchParallel(benchmark::State& state) {
  set_threads(state);
  const SearchOptions opts = search_options();
  for (auto _ : state) benchmark::DoNotOptimize(search_zero_plane(std::numbers::pi / 12, opts).min_residual);
  unsetenv("BIQUOT_THREADS");
}

void BM_ScanSerial(benchmark::State& state) {
  const ScanOptions opts = scan_options();
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(opts).size());
}

void BM_ScanParallel(benchmark::State& state) {
  set_threads(state);
  const ScanOptions opts = scan_options();
  for (auto _ : state) benchmark::DoNotOptimize(scan(opts).size());
  unsetenv("BIQUOT_THREADS");
}

}  // namespace

BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
