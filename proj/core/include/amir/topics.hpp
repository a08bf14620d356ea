#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amir/assignment.hpp"
#include "amir/textprep.hpp"

namespace amir {

/// Dense row-major matrix of doubles. Rows are exposed as spans.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const RowMatrix&, const RowMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LdaParams {
  std::size_t num_topics = 2;
  std::optional<double> alpha;  // defaults to 50/K
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;

  double alpha_for(std::size_t k) const { return alpha ? *alpha : 50.0 / static_cast<double>(k); }
};

/// Fitted LDA state. phi is K x V, theta is N x K; both row-stochastic.
struct TopicModel {
  std::size_t num_topics = 0;
  std::vector<std::string> vocab;
  RowMatrix phi;
  RowMatrix theta;
  std::vector<std::string> doc_ids;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double coherence = 0.0;

  /// Indices of the `m` most probable words of `topic`, ties by lower index.
  std::vector<std::size_t> top_words(std::size_t topic, std::size_t m) const;
  std::optional<std::size_t> word_index(const std::string& word) const;
};

/// Collapsed Gibbs sampling. Deterministic for a given (docs, params).
/// Throws InvalidK (K < 2), EmptyVocabulary, InvalidArgument (no docs or
/// zero iterations).
TopicModel fit_lda(std::span<const TokenStream> docs, const LdaParams& params);

/// UMass coherence averaged over topics, smoothed as
/// log((D(wi, wj) + 1) / (D(wj) + 1)); always <= 0.
double coherence(const TopicModel& model, std::span<const TokenStream> docs, std::size_t top_m);

struct KSweepEntry {
  std::size_t k = 0;
  double coherence = 0.0;
};

struct KSelection {
  std::size_t k = 0;
  TopicModel model;
  std::vector<KSweepEntry> sweep;
};

/// Fits one model per K in [k_min, k_max] and keeps the most coherent one;
/// ties go to the smaller K.
KSelection select_k(std::span<const TokenStream> docs, std::size_t k_min, std::size_t k_max,
                    const LdaParams& params, std::size_t top_m = 10);

/// Document-topic mixture of an unseen document under fixed phi, by
/// fixed-point iteration of the posterior responsibilities. Documents with
/// no in-vocabulary token get the uniform mixture.
std::vector<double> infer_theta(const TopicModel& model, const TokenStream& doc,
                                std::size_t iterations = 50);

class TopicLabelTable {
 public:
  TopicLabelTable() = default;
  TopicLabelTable(std::vector<std::string> labels,
                  std::map<std::string, std::vector<std::string>> synonyms = {});

  /// `{"labels": {"0": "Choices", ...}, "synonyms": {"Choices": [...]}}`
  static TopicLabelTable load(const std::filesystem::path& path);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t topic) const { return labels_.at(topic); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::map<std::string, std::vector<std::string>>& synonyms() const noexcept {
    return synonyms_;
  }

  /// Throws ConfigInvalid unless exactly topics 0..k-1 are labeled.
  void validate_for(std::size_t k) const;

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::vector<std::string>> synonyms_;
};

struct AssignThresholds {
  double tau_primary = 0.0;
  double tau_secondary = 0.0;

  /// The default rule: both thresholds at 1.5/K.
  static AssignThresholds defaults_for(std::size_t k);
};

/// Thresholded top-two argmax over one theta row.
TopicAssignment assign_row(std::span<const double> theta_row, const TopicLabelTable& labels,
                           const AssignThresholds& thresholds, std::string doc_id);

/// Assignment of an unseen document (theta inferred under the model).
TopicAssignment assign(const TopicModel& model, const TopicLabelTable& labels,
                       const AssignThresholds& thresholds, const TokenStream& doc);

/// Assignments for every training document of `model`.
std::vector<TopicAssignment> assign_training_docs(const TopicModel& model,
                                                  const TopicLabelTable& labels,
                                                  const AssignThresholds& thresholds);

/// Gives a topic to each document whose tokens contain synonyms of exactly
/// one topic. Synonyms are passed through `normalizer` before matching, so
/// they compare against normalized document tokens. Multi-word synonyms
/// match contiguous token runs.
std::vector<TopicAssignment> synonym_backfill(
    std::span<const std::pair<std::string, TokenStream>> unassigned,
    const TopicLabelTable& labels, const Normalizer& normalizer);

struct SubTopic {
  std::string label;  // top keywords joined by " / "
  std::vector<std::string> keywords;
  std::size_t doc_count = 0;
};

struct SubtopicOptions {
  std::size_t max_sub = 3;
  std::size_t min_docs = 30;
  std::size_t keywords = 3;
  std::size_t top_m = 10;
  LdaParams lda;  // num_topics ignored
};

/// Nested LDA over the documents whose primary topic is `topic`, with K
/// chosen by coherence in [1, max_sub]. K = 1 means the topic does not split
/// and yields no sub-topics; otherwise every nested topic that is the argmax
/// of at least one document is returned.
std::vector<SubTopic> extract_subtopics(std::span<const TokenStream> docs,
                                        std::span<const TopicAssignment> assignments,
                                        const std::string& topic, const SubtopicOptions& options);

class CooccurrenceGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  void add_node(const std::string& label);
  void add_pair(const std::string& a, const std::string& b, std::size_t weight = 1);

  const std::map<std::string, std::size_t>& nodes() const noexcept { return degree_; }
  const std::map<Edge, std::size_t>& edges() const noexcept { return edges_; }

  std::size_t degree(const std::string& label) const;
  std::size_t weighted_degree(const std::string& label) const;
  std::size_t weight(const std::string& a, const std::string& b) const;
  std::size_t total_weight() const;

  /// Heaviest neighbor of `label`; ties go to the lexicographically smaller
  /// label.
  std::optional<std::string> strongest_neighbor(const std::string& label) const;

  friend bool operator==(const CooccurrenceGraph&, const CooccurrenceGraph&) = default;

 private:
  std::map<std::string, std::size_t> degree_;
  std::map<Edge, std::size_t> edges_;
};

CooccurrenceGraph build_cooccurrence_graph(std::span<const TopicAssignment> assignments);

}  // namespace amir
