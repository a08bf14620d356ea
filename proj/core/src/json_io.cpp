#include "amir/json_io.hpp"

#include "amir/error.hpp"

namespace amir {
namespace {

using nlohmann::json;

json label_json(const std::optional<std::string>& label) { return label_or_unknown(label); }

std::optional<std::string> label_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  auto s = j.get<std::string>();
  if (s == kUnknownTopic) return std::nullopt;
  return s;
}

json matrix_json(const RowMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

RowMatrix matrix_from(const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  RowMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw InvalidArgument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json items_json(const std::vector<ScoredItem>& items) {
  json out = json::array();
  for (const auto& it : items) out.push_back({{"id", it.id}, {"score", it.score}});
  return out;
}

}  // namespace

void to_json(json& j, const Tweet& t) {
  j = {{"id", t.id},           {"text", t.text},         {"misleading", t.misleading},
       {"replies", t.replies}, {"retweets", t.retweets}, {"likes", t.likes}};
}

void from_json(const json& j, Tweet& t) {
  t.id = j.at("id").get<std::string>();
  t.text = j.at("text").get<std::string>();
  t.misleading = j.at("misleading").get<bool>();
  t.replies = j.value("replies", std::uint64_t{0});
  t.retweets = j.value("retweets", std::uint64_t{0});
  t.likes = j.value("likes", std::uint64_t{0});
}

void to_json(json& j, const FactArticle& a) {
  j = {{"id", a.id}, {"title", a.title}, {"content", a.content}, {"source_site", a.source_site}};
  j["published"] = a.published ? json(*a.published) : json(nullptr);
}

void from_json(const json& j, FactArticle& a) {
  a.id = j.at("id").get<std::string>();
  a.title = j.at("title").get<std::string>();
  a.content = j.value("content", std::string{});
  a.source_site = j.value("source_site", std::string{});
  a.published.reset();
  if (auto it = j.find("published"); it != j.end() && !it->is_null()) a.published = it->get<std::string>();
}

void to_json(json& j, const TopicAssignment& a) {
  j = {{"doc_id", a.doc_id},
       {"primary", label_json(a.primary)},
       {"secondary", label_json(a.secondary)},
       {"primary_prob", a.primary_prob},
       {"secondary_prob", a.secondary_prob}};
}

void from_json(const json& j, TopicAssignment& a) {
  a.doc_id = j.at("doc_id").get<std::string>();
  a.primary = label_from(j.at("primary"));
  a.secondary = label_from(j.at("secondary"));
  a.primary_prob = j.value("primary_prob", 0.0);
  a.secondary_prob = j.value("secondary_prob", 0.0);
}

void to_json(json& j, const CorpusStats& s) {
  json topics = json::object();
  for (const auto& [label, tc] : s.per_topic_counts) {
    topics[label] = {{"count", tc.count}, {"percentage", tc.percentage}};
  }
  j = {{"n_tweets", s.n_tweets},
       {"n_misleading", s.n_misleading},
       {"n_articles", s.n_articles},
       {"per_topic_counts", topics}};
}

void to_json(json& j, const TopicModel& m) {
  j = {{"num_topics", m.num_topics},
       {"vocab", m.vocab},
       {"phi", matrix_json(m.phi)},
       {"theta", matrix_json(m.theta)},
       {"doc_ids", m.doc_ids},
       {"alpha", m.alpha},
       {"beta", m.beta},
       {"seed", m.seed},
       {"iterations", m.iterations},
       {"coherence", m.coherence}};
}

void from_json(const json& j, TopicModel& m) {
  m.num_topics = j.at("num_topics").get<std::size_t>();
  m.vocab = j.at("vocab").get<std::vector<std::string>>();
  m.phi = matrix_from(j.at("phi"));
  m.theta = matrix_from(j.at("theta"));
  m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.at("beta").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.coherence = j.value("coherence", 0.0);
  if (m.phi.rows() != m.num_topics || m.phi.cols() != m.vocab.size()) {
    throw InvalidArgument("topic model: phi shape does not match num_topics x vocab");
  }
}

void to_json(json& j, const CooccurrenceGraph& g) {
  json nodes = json::array();
  for (const auto& [label, degree] : g.nodes()) nodes.push_back({{"label", label}, {"degree", degree}});
  json edges = json::array();
  for (const auto& [e, w] : g.edges()) edges.push_back({{"a", e.first}, {"b", e.second}, {"weight", w}});
  j = {{"nodes", nodes}, {"edges", edges}};
}

void from_json(const json& j, CooccurrenceGraph& g) {
  g = CooccurrenceGraph{};
  for (const auto& n : j.at("nodes")) g.add_node(n.at("label").get<std::string>());
  for (const auto& e : j.at("edges")) {
    g.add_pair(e.at("a").get<std::string>(), e.at("b").get<std::string>(),
               e.at("weight").get<std::size_t>());
  }
}

void to_json(json& j, const SubTopic& s) {
  j = {{"label", s.label}, {"keywords", s.keywords}, {"doc_count", s.doc_count}};
}

void to_json(json& j, const MappingResult& r) {
  j = {{"source_topic", r.source_topic},
       {"target_topic", r.target_topic ? json(*r.target_topic) : json(nullptr)},
       {"method", to_string(r.method)},
       {"score", r.score},
       {"matched_keywords", r.matched_keywords},
       {"nearest", r.nearest ? json(*r.nearest) : json(nullptr)}};
}

void from_json(const json& j, MappingResult& r) {
  r.source_topic = j.at("source_topic").get<std::string>();
  r.target_topic.reset();
  if (const auto& t = j.at("target_topic"); !t.is_null()) r.target_topic = t.get<std::string>();
  r.method = mapping_method_from_string(j.at("method").get<std::string>());
  r.score = j.at("score").get<double>();
  r.matched_keywords = j.value("matched_keywords", std::vector<std::string>{});
  r.nearest.reset();
  if (auto it = j.find("nearest"); it != j.end() && !it->is_null()) r.nearest = it->get<std::string>();
}

void to_json(json& j, const TopicProjection& p) {
  j = {{"coords", p.coords}, {"eigenvalues", p.eigenvalues}};
}

void to_json(json& j, const EntitySpan& e) {
  j = {{"surface", e.surface}, {"start", e.start}, {"end", e.end}, {"label", e.label}};
}

void from_json(const json& j, EntitySpan& e) {
  e.surface = j.at("surface").get<std::string>();
  e.start = j.at("start").get<std::size_t>();
  e.end = j.at("end").get<std::size_t>();
  e.label = j.at("label").get<std::string>();
}

void to_json(json& j, const SentimentLabel& s) {
  j = {{"polarity", to_string(s.polarity)}, {"compound", s.compound}};
}

void from_json(const json& j, SentimentLabel& s) {
  s.polarity = polarity_from_string(j.at("polarity").get<std::string>());
  s.compound = j.at("compound").get<double>();
}

void to_json(json& j, const MatchCriteria& c) {
  j = {{"require_topic", c.require_topic},
       {"min_shared_entities", c.min_shared_entities},
       {"require_sentiment", c.require_sentiment}};
}

void from_json(const json& j, MatchCriteria& c) {
  c.require_topic = j.at("require_topic").get<bool>();
  c.min_shared_entities = j.at("min_shared_entities").get<int>();
  c.require_sentiment = j.at("require_sentiment").get<bool>();
}

json recommendation_json(const CounterTweetRecommendation& r) {
  return {{"target_id", r.target_id},
          {"approach", "sm"},
          {"tier", nullptr},
          {"relaxed", r.relaxed},
          {"items", items_json(r.items)}};
}

json recommendation_json(const ArticleRecommendation& r) {
  return {{"target_id", r.target_id},
          {"approach", "fc"},
          {"tier", to_string(r.tier)},
          {"relaxed", false},
          {"items", items_json(r.items)}};
}

json report_json(const EvalReport& r) {
  json metrics = json::object();
  for (auto k : r.cutoffs) metrics["MRR@" + std::to_string(k)] = r.mrr.at(k);
  for (auto k : r.cutoffs) metrics["MAP@" + std::to_string(k)] = r.map.at(k);
  return {{"approach", to_string(r.approach)}, {"metrics", metrics}};
}

json mapping_table_json(std::span<const MappingResult> mappings) {
  json out = json::array();
  for (const auto& m : mappings) out.push_back(m);
  return out;
}

std::vector<MappingResult> mapping_table_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("mapping table must be a JSON list");
  return j.get<std::vector<MappingResult>>();
}

}  // namespace amir
