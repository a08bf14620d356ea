#include <benchmark/benchmark.h>

#include <random>

#include "amir/topics.hpp"

namespace {

std::vector<amir::TokenStream> synthetic_docs(std::size_t n, std::size_t topics, std::size_t len) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> word(0, 19);
  std::vector<amir::TokenStream> docs(n);
  for (std::size_t d = 0; d < n; ++d) {
    docs[d].source_id = "d" + std::to_string(d);
    for (std::size_t i = 0; i < len; ++i) {
      docs[d].tokens.push_back("t" + std::to_string(d % topics) + "w" + std::to_string(word(rng)));
    }
  }
  return docs;
}

void BM_FitLda(benchmark::State& state) {
  const auto docs = synthetic_docs(static_cast<std::size_t>(state.range(0)), 5, 20);
  amir::LdaParams p;
  p.num_topics = 5;
  p.iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(amir::fit_lda(docs, p));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20 * 50);
}
BENCHMARK(BM_FitLda)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_InferTheta(benchmark::State& state) {
  const auto docs = synthetic_docs(300, 5, 20);
  amir::LdaParams p;
  p.num_topics = 5;
  p.iterations = 50;
  const auto model = amir::fit_lda(docs, p);
  for (auto _ : state) benchmark::DoNotOptimize(amir::infer_theta(model, docs[7]));
}
BENCHMARK(BM_InferTheta);

}  // namespace
