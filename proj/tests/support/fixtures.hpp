#pragma once

// Generators and doubles shared by the unit, tool and acceptance tests.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "amir/annotate.hpp"
#include "amir/rebuttal.hpp"
#include "amir/similarity.hpp"
#include "amir/textprep.hpp"

namespace amir::test {

/// Documents drawn from `topics` disjoint vocabularies; every document uses
/// a single topic. `truth[i]` is the generating topic of document i.
struct PlantedCorpus {
  std::vector<TokenStream> docs;
  std::vector<std::size_t> truth;
};

PlantedCorpus planted_corpus(std::size_t n_docs, std::size_t topics, std::size_t words_per_topic,
                             std::size_t doc_len, std::uint64_t seed);

/// Two corpora over vocabulary groups: twins "A" and "B" appear in both,
/// decoy "D" only in the misleading corpus. Word stems are the group name,
/// so keyword signatures of twins coincide.
struct PlantedTwins {
  std::vector<TokenStream> misleading;
  std::vector<TokenStream> factcheck;
};

PlantedTwins planted_twins(std::size_t docs_per_group, std::size_t doc_len, std::uint64_t seed);

/// Fraction of documents whose argmax topic agrees with the majority
/// argmax of their true topic.
double argmax_purity(const std::vector<std::vector<double>>& theta_rows,
                     const std::vector<std::size_t>& truth, std::size_t topics);

/// Scores by a caller-supplied function of the two texts.
class FunctionScorer final : public SentencePairScorer {
 public:
  using Fn = std::function<double(std::string_view, std::string_view)>;
  explicit FunctionScorer(Fn fn, bool reentrant = true) : fn_(std::move(fn)), reentrant_(reentrant) {}
  std::string name() const override { return "stub"; }
  PairScore score(std::string_view a, std::string_view b) const override { return {fn_(a, b), false}; }
  bool reentrant() const override { return reentrant_; }

 private:
  Fn fn_;
  bool reentrant_;
};

/// Returns a pinned score per candidate text and `fallback` otherwise.
FunctionScorer pinned_scorer(std::map<std::string, double> by_candidate, double fallback = 0.0);
FunctionScorer constant_scorer(double value);

AnnotatedTweet annotated(std::string id, std::string text, bool misleading,
                         std::optional<std::string> topic,
                         std::vector<std::string> entity_surfaces, Polarity polarity);

TopicAssignment assignment(std::string doc_id, std::optional<std::string> primary,
                           std::optional<std::string> secondary = std::nullopt);

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Random probability vector of length n; some entries may be exactly 0.
std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n, bool allow_zeros = true);

}  // namespace amir::test
