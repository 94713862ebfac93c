#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "arfs/boruta.hpp"
#include "arfs/decompose.hpp"
#include "arfs/forest.hpp"
#include "arfs/split.hpp"
#include "arfs/stats.hpp"
#include "arfs/synth.hpp"

using namespace arfs;

namespace {

const SyntheticData& set_data(const char* name) {
  static std::vector<std::pair<std::string, SyntheticData>> cache;
  for (const auto& [key, data] : cache)
    if (key == name) return data;
  Rng rng(1);
  cache.emplace_back(name, generate(preset(name), rng));
  return cache.back().second;
}

void BM_BestSplit(benchmark::State& state) {
  const auto& ds = set_data("Set 8").data;
  std::vector<std::size_t> rows(ds.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<std::size_t> features(ds.features());
  std::iota(features.begin(), features.end(), std::size_t{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_split(ds, rows, features, Criterion::gini));
  }
}
BENCHMARK(BM_BestSplit)->Unit(benchmark::kMillisecond);

void BM_FitForest(benchmark::State& state) {
  const auto& ds = set_data(state.range(0) == 0 ? "Set 4" : "Set 8").data;
  ForestParams params;
  params.feature_fraction = 0.8;
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_forest(params, ds, rng));
  }
}
BENCHMARK(BM_FitForest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TQuantile(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_quantile(1.0 - 5e-7, 49.0));
  }
}
BENCHMARK(BM_TQuantile);

void BM_SampleNull(benchmark::State& state) {
  const auto& ds = set_data("Set 3").data;
  ForestParams params;
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_null(params, ds, 50, rng));
  }
}
BENCHMARK(BM_SampleNull)->Unit(benchmark::kMillisecond);

void BM_Boruta(benchmark::State& state) {
  const auto& ds = set_data("Set 4").data;
  const PipelineConfig config;
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_boruta(config.boruta_forest, ds, config.boruta_max_iter,
                                        config.boruta_level, rng));
  }
}
BENCHMARK(BM_Boruta)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const auto& ds = set_data("Set 1").data;
  const PipelineConfig config;
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(ds, config, rng));
  }
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
