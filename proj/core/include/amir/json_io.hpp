#pragma once

// JSON bindings for the engine's value types. Kept apart from the domain
// headers so that only translation units doing serialization pay for
// nlohmann/json.

#include <nlohmann/json.hpp>

#include "amir/annotate.hpp"
#include "amir/assignment.hpp"
#include "amir/corpus.hpp"
#include "amir/evaluate.hpp"
#include "amir/mapping.hpp"
#include "amir/rebuttal.hpp"
#include "amir/topics.hpp"

namespace amir {

void to_json(nlohmann::json& j, const Tweet& t);
void from_json(const nlohmann::json& j, Tweet& t);
void to_json(nlohmann::json& j, const FactArticle& a);
void from_json(const nlohmann::json& j, FactArticle& a);

void to_json(nlohmann::json& j, const TopicAssignment& a);
void from_json(const nlohmann::json& j, TopicAssignment& a);

void to_json(nlohmann::json& j, const CorpusStats& s);

void to_json(nlohmann::json& j, const TopicModel& m);
void from_json(const nlohmann::json& j, TopicModel& m);

void to_json(nlohmann::json& j, const CooccurrenceGraph& g);
void from_json(const nlohmann::json& j, CooccurrenceGraph& g);

void to_json(nlohmann::json& j, const SubTopic& s);

void to_json(nlohmann::json& j, const MappingResult& r);
void from_json(const nlohmann::json& j, MappingResult& r);
void to_json(nlohmann::json& j, const TopicProjection& p);

void to_json(nlohmann::json& j, const EntitySpan& e);
void from_json(const nlohmann::json& j, EntitySpan& e);
void to_json(nlohmann::json& j, const SentimentLabel& s);
void from_json(const nlohmann::json& j, SentimentLabel& s);

void to_json(nlohmann::json& j, const MatchCriteria& c);
void from_json(const nlohmann::json& j, MatchCriteria& c);

nlohmann::json recommendation_json(const CounterTweetRecommendation& r);
nlohmann::json recommendation_json(const ArticleRecommendation& r);

nlohmann::json report_json(const EvalReport& r);

/// Mapping table as exported by the mapping stage: a JSON list.
nlohmann::json mapping_table_json(std::span<const MappingResult> mappings);
std::vector<MappingResult> mapping_table_from_json(const nlohmann::json& j);

}  // namespace amir
