#include "amir/rebuttal.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "amir/error.hpp"

namespace amir {
namespace {

const TopicAssignment& need_topic(const AnnotatedTweet& t) {
  if (!t.topic) throw MissingAnnotation(t.tweet.id, "topic");
  return *t.topic;
}

const std::vector<EntitySpan>& need_entities(const AnnotatedTweet& t) {
  if (!t.entities) throw MissingAnnotation(t.tweet.id, "entity");
  return *t.entities;
}

const SentimentLabel& need_sentiment(const AnnotatedTweet& t) {
  if (!t.sentiment) throw MissingAnnotation(t.tweet.id, "sentiment");
  return *t.sentiment;
}

const MappingResult* mapping_row(const std::string& topic, std::span<const MappingResult> mappings) {
  for (const auto& m : mappings) {
    if (m.source_topic == topic) return &m;
  }
  return nullptr;
}

std::vector<ScoredItem> rank_articles(std::string_view query, const ArticleIndex& index,
                                      const std::string& topic, const SentencePairScorer& scorer,
                                      std::size_t k) {
  std::vector<RankCandidate> cands;
  for (std::size_t i = 0; i < index.articles.size() && i < index.assignments.size(); ++i) {
    if (index.assignments[i].primary == topic) {
      cands.push_back({index.articles[i].id, index.articles[i].title});
    }
  }
  return rank_candidates(query, cands, scorer, k);
}

}  // namespace

std::size_t shared_entity_count(std::span<const EntitySpan> a, std::span<const EntitySpan> b) {
  std::set<std::string> left;
  for (const auto& s : a) left.insert(to_lower_ascii(s.surface));
  std::set<std::string> shared;
  for (const auto& s : b) {
    std::string key = to_lower_ascii(s.surface);
    if (left.count(key)) shared.insert(std::move(key));
  }
  return shared.size();
}

bool criteria_match(const AnnotatedTweet& mis, const AnnotatedTweet& cand, const MatchCriteria& c) {
  if (c.require_topic) {
    const auto& a = need_topic(mis);
    const auto& b = need_topic(cand);
    if (!a.primary || a.primary != b.primary) return false;
  }
  if (c.min_shared_entities > 0) {
    const auto n = shared_entity_count(need_entities(mis), need_entities(cand));
    if (n < static_cast<std::size_t>(c.min_shared_entities)) return false;
  }
  if (c.require_sentiment) {
    if (need_sentiment(mis).polarity != need_sentiment(cand).polarity) return false;
  }
  return true;
}

bool relaxation_is_vacuous(const MatchCriteria& strict, const MatchCriteria& relaxed) {
  return (relaxed.require_topic || !strict.require_topic) &&
         relaxed.min_shared_entities >= strict.min_shared_entities &&
         (relaxed.require_sentiment || !strict.require_sentiment);
}

void validate_criteria(const MatchCriteria& strict, const MatchCriteria& relaxed) {
  if (strict.min_shared_entities < 0 || relaxed.min_shared_entities < 0) {
    throw ConfigInvalid("min_shared_entities must be >= 0");
  }
  if (relaxation_is_vacuous(strict, relaxed)) {
    throw ConfigInvalid("relaxed criteria accept nothing the strict criteria reject");
  }
}

std::vector<ScoredItem> rank_candidates(std::string_view query,
                                        std::span<const RankCandidate> candidates,
                                        const SentencePairScorer& scorer, std::size_t k) {
  std::vector<ScoredItem> items;
  items.reserve(candidates.size());
  for (const auto& c : candidates) {
    items.push_back({std::string(c.id), pair_score(scorer, query, c.text).value});
  }
  std::sort(items.begin(), items.end(), [](const ScoredItem& a, const ScoredItem& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  if (k > 0 && items.size() > k) items.resize(k);
  return items;
}

CounterTweetRecommendation recommend_counter_tweets(const AnnotatedTweet& mis,
                                                    std::span<const AnnotatedTweet> pool,
                                                    std::size_t k, const MatchCriteria& strict,
                                                    const MatchCriteria& relaxed,
                                                    const SentencePairScorer& scorer) {
  if (k == 0) throw InvalidArgument("k must be >= 1");
  CounterTweetRecommendation rec;
  rec.target_id = mis.tweet.id;

  auto eligible = [&](const AnnotatedTweet& c) {
    return !c.tweet.misleading && c.tweet.id != mis.tweet.id;
  };
  std::vector<RankCandidate> cands;
  for (const auto& c : pool) {
    if (eligible(c) && criteria_match(mis, c, strict)) cands.push_back({c.tweet.id, c.tweet.text});
  }
  if (cands.empty()) {
    rec.relaxed = true;
    for (const auto& c : pool) {
      if (eligible(c) && criteria_match(mis, c, relaxed)) cands.push_back({c.tweet.id, c.tweet.text});
    }
  }
  rec.items = rank_candidates(mis.tweet.text, cands, scorer, k);
  return rec;
}

std::optional<std::string> mapped_topic(const std::string& tweet_topic,
                                        std::span<const MappingResult> mappings) {
  const MappingResult* m = mapping_row(tweet_topic, mappings);
  return m ? m->target_topic : std::nullopt;
}

std::vector<std::string> filter_articles(const std::string& tweet_topic,
                                         std::span<const MappingResult> mappings,
                                         std::span<const TopicAssignment> article_assignments) {
  std::vector<std::string> ids;
  const auto target = mapped_topic(tweet_topic, mappings);
  if (!target) return ids;
  for (const auto& a : article_assignments) {
    if (a.primary == target) ids.push_back(a.doc_id);
  }
  return ids;
}

const char* to_string(Tier t) noexcept {
  switch (t) {
    case Tier::Specific: return "Specific";
    case Tier::Near: return "Near";
    case Tier::Broad: return "Broad";
  }
  return "Broad";
}

Tier tier_from_string(std::string_view s) {
  const std::string l = to_lower_ascii(s);
  if (l == "specific") return Tier::Specific;
  if (l == "near") return Tier::Near;
  if (l == "broad") return Tier::Broad;
  throw InvalidArgument("unknown tier: " + std::string(s));
}

std::optional<std::string> broad_fallback_topic(const std::string& tweet_topic,
                                                std::span<const MappingResult> mappings,
                                                const CooccurrenceGraph& cooccurrence) {
  if (const MappingResult* row = mapping_row(tweet_topic, mappings)) {
    const auto& anchor = row->target_topic ? row->target_topic : row->nearest;
    if (anchor) {
      if (auto n = cooccurrence.strongest_neighbor(*anchor)) return n;
    }
  }

  std::set<std::string> mapped;
  for (const auto& m : mappings) {
    if (m.target_topic) mapped.insert(*m.target_topic);
  }
  const CooccurrenceGraph::Edge* best = nullptr;
  std::size_t best_w = 0;
  for (const auto& [edge, w] : cooccurrence.edges()) {
    if (!mapped.count(edge.first) && !mapped.count(edge.second)) continue;
    if (w > best_w) {
      best = &edge;
      best_w = w;
    }
  }
  if (!best) return std::nullopt;
  const auto da = cooccurrence.weighted_degree(best->first);
  const auto db = cooccurrence.weighted_degree(best->second);
  return db > da ? best->second : best->first;
}

ArticleRecommendation tiered_recommend(const AnnotatedTweet& mis, const ArticleIndex& index,
                                       std::span<const MappingResult> mappings,
                                       const CooccurrenceGraph& cooccurrence,
                                       const SentencePairScorer& scorer,
                                       double specific_threshold, std::size_t k) {
  if (!mis.topic || !mis.topic->primary) throw NoTopicAssignment(mis.tweet.id);
  const std::string& topic = *mis.topic->primary;

  ArticleRecommendation rec;
  rec.target_id = mis.tweet.id;
  if (auto target = mapped_topic(topic, mappings)) {
    auto items = rank_articles(mis.tweet.text, index, *target, scorer, k);
    if (!items.empty()) {
      rec.tier = items.front().score >= specific_threshold ? Tier::Specific : Tier::Near;
      rec.items = std::move(items);
      rec.used_topic = std::move(target);
      return rec;
    }
  }
  rec.tier = Tier::Broad;
  if (auto fallback = broad_fallback_topic(topic, mappings, cooccurrence)) {
    rec.items = rank_articles(mis.tweet.text, index, *fallback, scorer, k);
    rec.used_topic = std::move(fallback);
  }
  return rec;
}

const AnnotatedTweet& pick_target_tweet(const std::string& topic,
                                        std::span<const AnnotatedTweet> tweets,
                                        std::uint64_t seed) {
  std::vector<const AnnotatedTweet*> pool;
  for (const auto& t : tweets) {
    if (t.tweet.misleading && t.topic && t.topic->primary == topic) pool.push_back(&t);
  }
  if (pool.empty()) throw EmptyTopic(topic);
  std::mt19937_64 gen(seed);
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  const auto i = std::min(static_cast<std::size_t>(u * static_cast<double>(pool.size())), pool.size() - 1);
  return *pool[i];
}

}  // namespace amir
