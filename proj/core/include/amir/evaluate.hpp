#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "amir/rebuttal.hpp"

namespace amir {

using RelevanceVector = std::vector<bool>;

/// Fraction of the first k entries that are relevant. Throws KOutOfRange.
double precision_at_k(const RelevanceVector& rel, std::size_t k);

/// MAP@k with the positional 1/k divisor:
///   (1/N) sum_q (1/k) sum_{i<=k} P@i * rel(i)
/// Vectors are padded with non-relevant entries or truncated to k.
/// Throws EmptyQuerySet.
double map_at_k(std::span<const RelevanceVector> rels, std::size_t k);

/// Textbook average precision (divide by the number of relevant items in
/// the top k; 0 when none). Reported only on request.
double conventional_map_at_k(std::span<const RelevanceVector> rels, std::size_t k);

/// Mean over queries of 1/rank of the first relevant entry within k; a
/// query without one contributes 0. Throws EmptyQuerySet.
double mrr_at_k(std::span<const RelevanceVector> rels, std::size_t k);

/// rel(i) = criteria_match(mis, recommended[i], strict).
RelevanceVector judge_sm(const AnnotatedTweet& mis, std::span<const AnnotatedTweet> recommended,
                         const MatchCriteria& strict);

struct JudgedArticle {
  const TopicAssignment* assignment = nullptr;
  double score = 0.0;
};

/// rel(i) = article primary is the mapped topic of the tweet's topic and
/// score >= threshold.
RelevanceVector judge_fc(const AnnotatedTweet& mis, std::span<const JudgedArticle> recommended,
                         std::span<const MappingResult> mappings, double threshold);

enum class Approach { SocialMedia, FactCheck };

const char* to_string(Approach a) noexcept;  // "AMIR_SM" / "AMIR_FC"

inline constexpr std::size_t kDefaultCutoffs[] = {3, 5, 10, 15, 20};

struct EvalReport {
  Approach approach = Approach::SocialMedia;
  std::vector<std::size_t> cutoffs;
  std::map<std::size_t, double> mrr;
  std::map<std::size_t, double> map;
  std::size_t queries = 0;
  bool conventional_ap = false;
};

struct EvalConfig {
  std::vector<std::size_t> cutoffs{3, 5, 10, 15, 20};
  MatchCriteria strict = MatchCriteria::strict_default();
  double threshold = kSpecificThreshold;
  std::size_t max_queries = 0;  // 0 = every misleading tweet
  bool conventional_ap = false;
};

struct EvalInputs {
  std::span<const AnnotatedTweet> tweets;  // misleading queries and the pool
  ArticleIndex articles;
  std::span<const MappingResult> mappings;
  const SentencePairScorer* scorer = nullptr;
};

/// Ranks the whole candidate pool (no criteria filter) for every misleading
/// tweet with a known topic, judges the top max(cutoffs), and aggregates.
EvalReport run_evaluation(Approach approach, const EvalInputs& inputs, const EvalConfig& config);

/// Aligned text table: one row per report, MRR columns then MAP columns.
std::string render_report_table(std::span<const EvalReport> reports);

}  // namespace amir
