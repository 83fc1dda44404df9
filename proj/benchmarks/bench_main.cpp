#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "activerank/config.hpp"
#include "activerank/ensemble.hpp"
#include "activerank/exact.hpp"
#include "activerank/experiment.hpp"
#include "activerank/oracles.hpp"
#include "activerank/quicksort.hpp"

using namespace activerank;

namespace {

std::vector<ElementId> ids(std::size_t n) {
  std::vector<ElementId> v(n);
  std::iota(v.begin(), v.end(), ElementId{0});
  return v;
}

Permutation shuffled(std::size_t n, RandomSource& rng) {
  auto v = ids(n);
  std::shuffle(v.begin(), v.end(), rng.engine());
  return Permutation(std::move(v));
}

void BM_QuickSort(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlantedModel model(n, 0.1, 7);
  const auto elements = ids(n);
  std::uint64_t queries = 0;
  RandomSource rng(1);
  for (auto _ : state) {
    QueryLedger ledger;
    benchmark::DoNotOptimize(quicksort_rank(elements, QueryContext(model, ledger), rng));
    queries += ledger.total();
  }
  state.counters["queries"] =
      benchmark::Counter(static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_QuickSort)->RangeMultiplier(4)->Range(64, 16384);

void BM_BuildEnsemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto shape = EnsembleShape::make(n, n, 0.3, DecomposeConfig{});
  RandomSource rng(2);
  const Permutation pi = shuffled(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_ensemble(pi, shape, rng));
  state.counters["cell_size"] = static_cast<double>(shape.cell_size);
}
BENCHMARK(BM_BuildEnsemble)->RangeMultiplier(4)->Range(64, 4096);

void BM_RefreshEnsemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto shape = EnsembleShape::make(n, n, 0.3, DecomposeConfig{});
  RandomSource rng(3);
  const Permutation pi = shuffled(n, rng);
  const SampleEnsemble base = build_ensemble(pi, shape, rng);
  for (auto _ : state) {
    state.PauseTiming();
    SampleEnsemble s = base;
    const auto u = static_cast<ElementId>(rng.index(n));
    const auto j = static_cast<Position>(rng.index(n) + 1);
    state.ResumeTiming();
    benchmark::DoNotOptimize(refresh_ensemble(s, pi, u, j, rng));
  }
}
BENCHMARK(BM_RefreshEnsemble)->RangeMultiplier(4)->Range(64, 4096);

void BM_FindImprovingMove(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tournament t = make_planted(n, 0.1, 11);
  const auto shape = EnsembleShape::make(n, n, 0.3, DecomposeConfig{});
  RandomSource rng(4);
  const Permutation pi = shuffled(n, rng);
  const SampleEnsemble s = build_ensemble(pi, shape, rng);
  QueryLedger ledger;
  LocalLabels labels(ids(n), QueryContext(t, ledger), phase::kEnsemble);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_improving_move(s, pi, labels, DecomposeConfig{}.success_fraction));
  }
}
BENCHMARK(BM_FindImprovingMove)->RangeMultiplier(4)->Range(64, 1024);

void BM_BruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tournament t = make_planted(n, 0.2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_mfast(t));
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 18, 2);

void BM_Pipeline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlantedModel model(n, 0.1, 9);
  const auto elements = ids(n);
  DecomposeConfig config;
  config.c_final = 0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    QueryLedger ledger;
    benchmark::DoNotOptimize(
        run_pipeline(elements, QueryContext(model, ledger), 0.3, config, ++seed));
  }
}
BENCHMARK(BM_Pipeline)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
