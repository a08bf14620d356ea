#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amir/textprep.hpp"
#include "amir/topics.hpp"

namespace amir {

struct WeightedKeyword {
  std::string word;
  double weight = 0.0;
};

/// Top-M words of one topic's phi row, by descending weight.
struct TopicSignature {
  std::string topic_label;
  std::vector<WeightedKeyword> keywords;
};

enum class MappingMethod { Distance, Naive, Tfidf };

const char* to_string(MappingMethod m) noexcept;
MappingMethod mapping_method_from_string(const std::string& s);

/// Association of a misleading-corpus topic with a fact-check topic.
/// Distance scores are Euclidean distances in the projection (smaller is
/// better); naive and TF-IDF scores are larger-is-better. `nearest` keeps
/// the best candidate even when it did not pass the method's floor.
struct MappingResult {
  std::string source_topic;
  std::optional<std::string> target_topic;
  MappingMethod method = MappingMethod::Distance;
  double score = 0.0;
  std::vector<std::string> matched_keywords;
  std::optional<std::string> nearest;

  friend bool operator==(const MappingResult&, const MappingResult&) = default;
};

/// Jensen-Shannon divergence with base-2 logarithms, in [0, 1]. Symmetric
/// bit-for-bit. Throws DimensionMismatch and NotADistribution.
double js_divergence(std::span<const double> p, std::span<const double> q);

struct TopicProjection {
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> eigenvalues{};
};

/// Classical multidimensional scaling of the pairwise JS-divergence matrix
/// (double-centred squared distances); the two leading principal
/// coordinates per row. Each axis is oriented so its largest-magnitude
/// coordinate is positive. Throws InvalidArgument for fewer than two rows
/// and DegenerateMatrix when all rows coincide.
TopicProjection project_topics(std::span<const std::vector<double>> rows);

/// phi rows of both models re-expressed over the union of their
/// vocabularies (first model's order, then new words of the second), with
/// additive smoothing `epsilon` and renormalization.
std::vector<std::vector<double>> merged_topic_rows(const TopicModel& a, const TopicModel& b,
                                                   double epsilon = 1e-12);

struct DistanceMappingOptions {
  /// Absolute cutoff; when unset the cutoff is mean + sd_multiplier * sd of
  /// the misleading-by-fact-check pairwise projected distances.
  std::optional<double> cutoff;
  double sd_multiplier = -1.0;
};

struct DistanceMapping {
  std::vector<MappingResult> mappings;
  TopicProjection projection;  // misleading topics first, then fact-check
  double cutoff = 0.0;
};

DistanceMapping map_by_distance(const TopicModel& mis_model, const TopicLabelTable& mis_labels,
                                const TopicModel& fc_model, const TopicLabelTable& fc_labels,
                                const DistanceMappingOptions& options = {});

std::vector<TopicSignature> make_signatures(const TopicModel& model, const TopicLabelTable& labels,
                                            std::size_t size = 15);

/// Runs every keyword through `normalizer`, merges keywords that collapse
/// to the same term (weights summed) and re-sorts by weight.
TopicSignature normalize_signature(const TopicSignature& sig, const Normalizer& normalizer);

/// Scores every fact-check topic by (number of shared keywords, summed
/// weight of the shared keywords on both sides); the lexicographic best
/// wins, ties to the earlier fact-check topic. Zero shared keywords maps to
/// no target. `score` carries the match count.
std::vector<MappingResult> map_by_keywords(std::span<const TopicSignature> mis_sigs,
                                           std::span<const TopicSignature> fc_sigs);

/// Cosine over keyword bags, TF-IDF weighted (weight x smoothed idf over
/// all signatures) or binary. Zero similarity maps to no target.
std::vector<MappingResult> map_by_tfidf(std::span<const TopicSignature> mis_sigs,
                                        std::span<const TopicSignature> fc_sigs, bool weighted);

/// Mean over mappings of the mean 1-based rank of the matched keywords in
/// the target signature. Throws NoMatchedKeywords when nothing matched.
double rank_k_quality(std::span<const MappingResult> mappings,
                      std::span<const TopicSignature> mis_sigs,
                      std::span<const TopicSignature> fc_sigs);

}  // namespace amir
