#include <benchmark/benchmark.h>

#include <random>

#include "amir/mapping.hpp"

namespace {

std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(3);
  std::gamma_distribution<double> g(0.3, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (auto& r : rows) {
    double sum = 0.0;
    for (auto& x : r) sum += (x = g(rng) + 1e-12);
    for (auto& x : r) x /= sum;
  }
  return rows;
}

void BM_Jsd(benchmark::State& state) {
  const auto rows = random_rows(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(amir::js_divergence(rows[0], rows[1]));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Jsd)->Arg(1000)->Arg(20000);

void BM_ProjectTopics(benchmark::State& state) {
  const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), 5000);
  for (auto _ : state) benchmark::DoNotOptimize(amir::project_topics(rows));
}
BENCHMARK(BM_ProjectTopics)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
