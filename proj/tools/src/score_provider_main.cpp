// Line-protocol score provider backed by word vectors; lets the engine's
// subprocess adapter be exercised against a real child process.

#include <CLI11.hpp>

#include <iostream>
#include <memory>

#include "amir/similarity.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sentence-pair score provider (SCORE/OK line protocol on stdin/stdout)"};
  std::string vectors;
  std::string stopwords;
  bool no_stem = false;
  app.add_option("--vectors", vectors, "Word-vector text file")->required()->check(CLI::ExistingFile);
  app.add_option("--stopwords", stopwords, "Stopword list (defaults to the built-in English list)")
      ->check(CLI::ExistingFile);
  app.add_flag("--no-stem", no_stem, "Disable stemming");
  CLI11_PARSE(app, argc, argv);

  try {
    auto table = std::make_shared<amir::WordVectorTable>(amir::WordVectorTable::load(vectors));
    amir::StopwordSet stop = stopwords.empty() ? amir::StopwordSet::english() : amir::StopwordSet::load(stopwords);
    amir::WordVectorScorer scorer(std::move(table), amir::Normalizer(std::move(stop), !no_stem));
    std::ios::sync_with_stdio(false);
    amir::serve_score_protocol(std::cin, std::cout, scorer);
  } catch (const std::exception& e) {
    std::cerr << "score provider: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
