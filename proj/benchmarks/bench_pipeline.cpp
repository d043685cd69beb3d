#include <benchmark/benchmark.h>

#include "citenorm/binomial.hpp"
#include "citenorm/rescale.hpp"
#include "citenorm/synthgen.hpp"
#include "citenorm/universality.hpp"

using namespace citenorm;

namespace {

GeneratorConfig bench_config(int fields, std::int64_t n) {
  GeneratorConfig config;
  config.model = GeneratorModel::universal;
  for (int i = 0; i < fields; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "F%03d", i);
    config.field_specs.push_back({name, n, 20.0, 1.1, 0.75});
  }
  config.horizon_years = 1;
  config.seed = 42;
  return config;
}

const SyntheticCorpus& bench_corpus() {
  static const SyntheticCorpus corpus = generate(bench_config(50, 2000));
  return corpus;
}

AnalysisConfig bench_analysis() {
  AnalysisConfig config;
  config.min_field_size = 0;
  return config;
}

}  // namespace

static void BM_Generate(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)), 1000);
  for (auto _ : state) {
    auto corpus = generate(config);
    benchmark::DoNotOptimize(corpus.publications.size());
  }
}
BENCHMARK(BM_Generate)->Arg(8)->Arg(32);

static void BM_BuildGroups(benchmark::State& state) {
  const auto& corpus = bench_corpus();
  const auto config = bench_analysis();
  for (auto _ : state) {
    auto groups = build_groups(corpus.publications, corpus.citations, config);
    benchmark::DoNotOptimize(groups.size());
  }
}
BENCHMARK(BM_BuildGroups);

static void BM_RescaleAndPool(benchmark::State& state) {
  const auto& corpus = bench_corpus();
  const auto config = bench_analysis();
  const auto groups = build_groups(corpus.publications, corpus.citations, config);
  for (auto _ : state) {
    auto pooled = pool(rescale_all(groups));
    benchmark::DoNotOptimize(pooled.scores.size());
  }
}
BENCHMARK(BM_RescaleAndPool);

static void BM_PercentileThreshold(benchmark::State& state) {
  const auto& corpus = bench_corpus();
  const auto config = bench_analysis();
  const auto pooled = pool(rescale_all(build_groups(corpus.publications, corpus.citations, config)));
  for (auto _ : state) {
    auto threshold = percentile_threshold(pooled, 0.1);
    benchmark::DoNotOptimize(threshold.value);
  }
}
BENCHMARK(BM_PercentileThreshold);

static void BM_Analyze(benchmark::State& state) {
  const auto& corpus = bench_corpus();
  const auto config = bench_analysis();
  const auto groups = build_groups(corpus.publications, corpus.citations, config);
  for (auto _ : state) {
    auto report = analyze(groups, config);
    benchmark::DoNotOptimize(report.observed_std);
  }
}
BENCHMARK(BM_Analyze);

static void BM_BinomialCdf(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(binomial_cdf(n / 10, n, 0.1));
  }
}
BENCHMARK(BM_BinomialCdf)->Arg(1000)->Arg(100000);

static void BM_ExpectedHistogram(benchmark::State& state) {
  std::vector<std::int64_t> sizes(50, 2000);
  for (auto _ : state) {
    auto hist = expected_histogram(sizes, 0.1, BinGrid{0.0, 0.005});
    benchmark::DoNotOptimize(hist.mass.data());
  }
}
BENCHMARK(BM_ExpectedHistogram);

BENCHMARK_MAIN();
