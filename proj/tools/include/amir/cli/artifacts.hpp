#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amir/annotate.hpp"
#include "amir/cli/config.hpp"
#include "amir/corpus.hpp"
#include "amir/mapping.hpp"
#include "amir/rebuttal.hpp"
#include "amir/topics.hpp"

namespace amir::cli {

struct TweetAnnotation {
  std::vector<EntitySpan> entities;
  SentimentLabel sentiment;
};

std::vector<TopicAssignment> load_assignments(const std::filesystem::path& path);
std::map<std::string, TweetAnnotation> load_annotations(const std::filesystem::path& path);
TopicModel load_model(const std::filesystem::path& path);
CooccurrenceGraph load_graph(const std::filesystem::path& path);
std::vector<MappingResult> load_mappings(const std::filesystem::path& path);

/// Joins tweets with their assignments and (when given) annotations by id.
std::vector<AnnotatedTweet> annotate_join(const std::vector<Tweet>& tweets,
                                          const std::vector<TopicAssignment>& assignments,
                                          const std::map<std::string, TweetAnnotation>* annotations);

/// Everything the serving path reads, loaded from a built output tree.
struct Artifacts {
  std::vector<Tweet> tweets;
  std::vector<FactArticle> articles;
  TopicModel tweet_model;
  TopicLabelTable tweet_labels;
  AssignThresholds tweet_thresholds;
  std::vector<TopicAssignment> article_assignments;
  std::vector<MappingResult> mappings;
  CooccurrenceGraph cooccurrence;
  std::vector<AnnotatedTweet> pool;
  Gazetteer gazetteer;
  SentimentLexicon lexicon;
  std::map<std::string, std::string> hashes;  // "<stage>/<file>" -> sha256
};

/// Throws StaleUpstream when a required stage is missing or out of date.
Artifacts load_artifacts(const PipelineConfig& config);

AssignThresholds thresholds_for(const CorpusTopicConfig& c, std::size_t k);

}  // namespace amir::cli
