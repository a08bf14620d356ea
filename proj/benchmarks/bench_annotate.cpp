#include <benchmark/benchmark.h>

#include <filesystem>

#include "amir/annotate.hpp"

namespace {

const std::string kTweet =
    "they all used aborted fetus in development, the vaccine astrazeneca johnson and johnson have fetal "
    "cell lines and the mrna is something never tested. #Pfizer is not SAFE but moderna is great!";

void BM_Recognize(benchmark::State& state) {
  const auto gaz = amir::Gazetteer::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "gazetteer.tsv");
  for (auto _ : state) benchmark::DoNotOptimize(amir::recognize(kTweet, gaz));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(kTweet.size()));
}
BENCHMARK(BM_Recognize);

void BM_Sentiment(benchmark::State& state) {
  const auto lex =
      amir::SentimentLexicon::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "sentiment_lexicon.tsv");
  for (auto _ : state) benchmark::DoNotOptimize(amir::classify_sentiment(kTweet, lex));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(kTweet.size()));
}
BENCHMARK(BM_Sentiment);

}  // namespace
