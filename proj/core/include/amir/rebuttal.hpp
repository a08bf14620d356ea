#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amir/annotate.hpp"
#include "amir/corpus.hpp"
#include "amir/mapping.hpp"
#include "amir/similarity.hpp"
#include "amir/topics.hpp"

namespace amir {

/// A tweet with the annotations the matching criteria read.
struct AnnotatedTweet {
  Tweet tweet;
  std::optional<TopicAssignment> topic;
  std::optional<std::vector<EntitySpan>> entities;
  std::optional<SentimentLabel> sentiment;
};

struct MatchCriteria {
  bool require_topic = true;
  int min_shared_entities = 1;
  bool require_sentiment = true;

  static MatchCriteria strict_default() { return {true, 1, true}; }
  static MatchCriteria relaxed_default() { return {false, 2, false}; }

  friend bool operator==(const MatchCriteria&, const MatchCriteria&) = default;
};

/// Case-folded entity surfaces shared by two span lists.
std::size_t shared_entity_count(std::span<const EntitySpan> a, std::span<const EntitySpan> b);

/// Throws MissingAnnotation when a criterion needs an annotation that either
/// tweet lacks.
bool criteria_match(const AnnotatedTweet& mis, const AnnotatedTweet& cand, const MatchCriteria& c);

/// True when every pair accepted by `relaxed` is also accepted by `strict`,
/// i.e. falling back to `relaxed` could never widen the candidate set.
bool relaxation_is_vacuous(const MatchCriteria& strict, const MatchCriteria& relaxed);
/// Throws ConfigInvalid for negative entity counts or a vacuous relaxation.
void validate_criteria(const MatchCriteria& strict, const MatchCriteria& relaxed);

struct ScoredItem {
  std::string id;
  double score = 0.0;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

struct RankCandidate {
  std::string_view id;
  std::string_view text;
};

/// Scores each candidate against `query`, sorts by (score desc, id asc) and
/// keeps the first `k` (k = 0 keeps all). Shared by serving and evaluation.
std::vector<ScoredItem> rank_candidates(std::string_view query,
                                        std::span<const RankCandidate> candidates,
                                        const SentencePairScorer& scorer, std::size_t k);

struct CounterTweetRecommendation {
  std::string target_id;
  std::vector<ScoredItem> items;
  bool relaxed = false;
};

/// Strict filter, then the relaxed fallback (strict OR relaxed) when nothing
/// survives, ranked by pair score. Misleading pool entries are ignored.
CounterTweetRecommendation recommend_counter_tweets(const AnnotatedTweet& mis,
                                                    std::span<const AnnotatedTweet> pool,
                                                    std::size_t k, const MatchCriteria& strict,
                                                    const MatchCriteria& relaxed,
                                                    const SentencePairScorer& scorer);

/// Mapped fact-check topic of a misleading-corpus topic, if any.
std::optional<std::string> mapped_topic(const std::string& tweet_topic,
                                        std::span<const MappingResult> mappings);

/// Ids of articles whose primary topic is the mapped topic of `tweet_topic`,
/// in corpus order. Empty when the topic is unmapped.
std::vector<std::string> filter_articles(const std::string& tweet_topic,
                                         std::span<const MappingResult> mappings,
                                         std::span<const TopicAssignment> article_assignments);

enum class Tier { Specific, Near, Broad };

const char* to_string(Tier t) noexcept;
Tier tier_from_string(std::string_view s);

struct ArticleRecommendation {
  std::string target_id;
  std::vector<ScoredItem> items;
  Tier tier = Tier::Broad;
  std::optional<std::string> used_topic;
};

inline constexpr double kSpecificThreshold = 0.62;

/// Fact-check topic used when the tweet's own mapping yields no candidates.
/// Anchor: the tweet topic's mapped target, else the nearest rejected
/// candidate recorded in its mapping row; the fallback is the anchor's
/// heaviest co-occurrence neighbor. Without an anchor, the heaviest edge
/// touching any mapped fact-check topic is taken and its endpoint with the
/// larger weighted degree wins.
std::optional<std::string> broad_fallback_topic(const std::string& tweet_topic,
                                                std::span<const MappingResult> mappings,
                                                const CooccurrenceGraph& cooccurrence);

/// Article pool plus the per-article assignments (aligned by index).
struct ArticleIndex {
  std::span<const FactArticle> articles;
  std::span<const TopicAssignment> assignments;
};

/// Three-tier article recommendation scored on article titles.
/// Throws NoTopicAssignment when `mis` carries no known primary topic.
ArticleRecommendation tiered_recommend(const AnnotatedTweet& mis, const ArticleIndex& index,
                                       std::span<const MappingResult> mappings,
                                       const CooccurrenceGraph& cooccurrence,
                                       const SentencePairScorer& scorer,
                                       double specific_threshold, std::size_t k);

/// Uniform seeded draw among the misleading tweets whose primary topic is
/// `topic`. Throws EmptyTopic.
const AnnotatedTweet& pick_target_tweet(const std::string& topic,
                                        std::span<const AnnotatedTweet> tweets,
                                        std::uint64_t seed);

}  // namespace amir
