#include <benchmark/benchmark.h>

#include <random>

#include "amir/evaluate.hpp"

namespace {

void BM_MapMrr(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::bernoulli_distribution coin(0.3);
  std::vector<amir::RelevanceVector> rels(static_cast<std::size_t>(state.range(0)), amir::RelevanceVector(20));
  for (auto& r : rels) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coin(rng);
  }
  for (auto _ : state) {
    for (std::size_t k : amir::kDefaultCutoffs) {
      benchmark::DoNotOptimize(amir::map_at_k(rels, k));
      benchmark::DoNotOptimize(amir::mrr_at_k(rels, k));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MapMrr)->Arg(100)->Arg(10000);

}  // namespace
