#include "amir/cli/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <openssl/evp.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "amir/cli/artifacts.hpp"
#include "amir/error.hpp"
#include "amir/json_io.hpp"

namespace amir::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kManifest = "manifest.json";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw Error(p.string() + ": " + e.what());
  }
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// Collects a stage's files and their hashes; the manifest is written last.
class StageWriter {
 public:
  explicit StageWriter(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    fs::remove(dir_ / kManifest);
  }

  void put(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    out << content;
    out.close();
    if (!out) throw Error("write failed: " + (dir_ / name).string());
    outputs_[name] = sha256_hex(content);
  }

  void put_json(const std::string& name, const json& j) { put(name, json_text(j)); }

  template <typename Range>
  void put_jsonl(const std::string& name, const Range& records) {
    std::string text;
    for (const auto& r : records) text += json(r).dump() + "\n";
    put(name, text);
  }

  std::vector<std::string> finish(Stage s, const std::string& settings_hash,
                                  const std::map<std::string, std::string>& inputs) {
    json m = {{"stage", stage_name(s)}, {"settings", settings_hash}, {"inputs", inputs}, {"outputs", outputs_}};
    std::ofstream out(dir_ / kManifest, std::ios::binary | std::ios::trunc);
    out << json_text(m);
    std::vector<std::string> names;
    for (const auto& [name, hash] : outputs_) names.push_back(name);
    return names;
  }

 private:
  fs::path dir_;
  std::map<std::string, std::string> outputs_;
};

std::optional<json> read_manifest(const PipelineConfig& c, Stage s) {
  const fs::path p = stage_dir(c, s) / kManifest;
  if (!fs::is_regular_file(p)) return std::nullopt;
  try {
    return read_json(p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string file_hash_or_builtin(const fs::path& p) { return p.empty() ? "builtin" : sha256_file(p); }

std::vector<std::pair<std::string, fs::path>> external_inputs(const PipelineConfig& c, Stage s) {
  const auto& p = c.paths;
  switch (s) {
    case Stage::Ingest:
      return {{"tweets", p.tweets}, {"articles", p.articles}};
    case Stage::FitTopics:
      return {{"stopwords", p.stopwords}, {"tweet_labels", p.tweet_labels}, {"article_labels", p.article_labels}};
    case Stage::MapTopics:
      return {{"stopwords", p.stopwords}, {"tweet_labels", p.tweet_labels}, {"article_labels", p.article_labels}};
    case Stage::Annotate:
      return {{"gazetteer", p.gazetteer}, {"lexicon", p.lexicon}};
    case Stage::RecommendSm:
    case Stage::RecommendFc:
    case Stage::Evaluate:
      return {{"stopwords", p.stopwords}, {"word_vectors", p.word_vectors}};
  }
  return {};
}

// Current hashes of everything the stage reads; nullopt when an upstream
// manifest is missing.
std::optional<std::map<std::string, std::string>> expected_inputs(const PipelineConfig& c, Stage s) {
  std::map<std::string, std::string> in;
  for (Stage u : upstream_of(s)) {
    auto m = read_manifest(c, u);
    if (!m) return std::nullopt;
    for (const auto& [name, hash] : (*m)["outputs"].items()) {
      in[std::string(stage_name(u)) + "/" + name] = hash.get<std::string>();
    }
  }
  for (const auto& [role, path] : external_inputs(c, s)) in["external:" + role] = file_hash_or_builtin(path);
  return in;
}

std::string settings_hash(const PipelineConfig& c, Stage s) {
  return sha256_hex(stage_settings(c, stage_name(s)).dump());
}

void collect_upstream(Stage s, std::set<Stage>& out) {
  for (Stage u : upstream_of(s)) {
    if (out.insert(u).second) collect_upstream(u, out);
  }
}

void require_upstream(const PipelineConfig& c, Stage s) {
  std::set<Stage> ups;
  collect_upstream(s, ups);
  for (Stage u : all_stages()) {
    if (!ups.count(u)) continue;
    if (!read_manifest(c, u)) {
      throw StaleUpstream(std::string(stage_name(s)) + " needs " + stage_name(u) + ", which has not run");
    }
    if (!stage_is_current(c, u)) {
      throw StaleUpstream(std::string(stage_name(s)) + " needs " + stage_name(u) + ", which is out of date");
    }
  }
}

// ---- stage bodies ------------------------------------------------------------

fs::path in_stage(const PipelineConfig& c, Stage s, const char* file) { return stage_dir(c, s) / file; }

TokenStream article_tokens(const FactArticle& a, const Normalizer& n) {
  std::string text = a.title;
  if (!a.content.empty()) text += "\n" + a.content;
  return n(tokenize(text, a.id));
}

struct CorpusFit {
  KSelection selection;
  TopicLabelTable labels;
  std::vector<TopicAssignment> assignments;
};

CorpusFit fit_corpus(const std::vector<TokenStream>& docs, const CorpusTopicConfig& tc,
                     const fs::path& label_path, const PipelineConfig& c, const Normalizer& norm) {
  CorpusFit f;
  f.selection = select_k(docs, tc.k_min, tc.k_max, c.lda, c.coherence_top_m);
  f.labels = TopicLabelTable::load(label_path);
  f.labels.validate_for(f.selection.k);
  f.assignments = assign_training_docs(f.selection.model, f.labels, thresholds_for(tc, f.selection.k));

  std::vector<std::pair<std::string, TokenStream>> unknown;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < f.assignments.size(); ++i) {
    if (!f.assignments[i].known()) {
      unknown.emplace_back(docs[i].source_id, docs[i]);
      where.push_back(i);
    }
  }
  const auto filled = synonym_backfill(unknown, f.labels, norm);
  for (std::size_t j = 0; j < filled.size(); ++j) {
    if (filled[j].known()) f.assignments[where[j]] = filled[j];
  }
  return f;
}

json sweep_json(const std::vector<KSweepEntry>& sweep) {
  json out = json::array();
  for (const auto& e : sweep) out.push_back({{"k", e.k}, {"coherence", e.coherence}});
  return out;
}

void stage_ingest(const PipelineConfig& c, StageWriter& w) {
  const auto tweets = load_tweets(c.paths.tweets);
  const auto articles = load_articles(c.paths.articles);
  w.put_jsonl("tweets.jsonl", tweets);
  w.put_jsonl("articles.jsonl", articles);
  const auto misleading = std::count_if(tweets.begin(), tweets.end(), [](const Tweet& t) { return t.misleading; });
  w.put_json("summary.json", {{"n_tweets", tweets.size()},
                              {"n_misleading", misleading},
                              {"n_articles", articles.size()}});
}

void stage_fit_topics(const PipelineConfig& c, StageWriter& w) {
  const auto norm = make_normalizer(c);
  const auto tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  const auto articles = load_articles(in_stage(c, Stage::Ingest, "articles.jsonl"));

  std::vector<TokenStream> tweet_docs;
  for (const auto& t : tweets) tweet_docs.push_back(norm(tokenize(t.text, t.id)));
  std::vector<TokenStream> article_docs;
  for (const auto& a : articles) article_docs.push_back(article_tokens(a, norm));

  const auto tf = fit_corpus(tweet_docs, c.tweet_topics, c.paths.tweet_labels, c, norm);
  const auto af = fit_corpus(article_docs, c.article_topics, c.paths.article_labels, c, norm);

  json subtopics = json::object();
  for (const auto& label : tf.labels.labels()) {
    subtopics[label] = extract_subtopics(tweet_docs, tf.assignments, label, c.subtopics);
  }

  w.put_json("tweet_model.json", tf.selection.model);
  w.put_json("article_model.json", af.selection.model);
  w.put_jsonl("tweet_assignments.jsonl", tf.assignments);
  w.put_jsonl("article_assignments.jsonl", af.assignments);
  w.put_json("k_sweep.json", {{"tweets", sweep_json(tf.selection.sweep)},
                              {"articles", sweep_json(af.selection.sweep)}});
  w.put_json("subtopics.json", subtopics);
  w.put_json("cooccurrence.json", build_cooccurrence_graph(af.assignments));
  w.put_json("stats.json", corpus_stats(tweets, tf.assignments, articles.size()));
}

void stage_map_topics(const PipelineConfig& c, StageWriter& w) {
  const auto norm = make_normalizer(c);
  const auto mis = load_model(in_stage(c, Stage::FitTopics, "tweet_model.json"));
  const auto fc = load_model(in_stage(c, Stage::FitTopics, "article_model.json"));
  const auto mis_labels = TopicLabelTable::load(c.paths.tweet_labels);
  const auto fc_labels = TopicLabelTable::load(c.paths.article_labels);

  const auto dist = map_by_distance(mis, mis_labels, fc, fc_labels, c.distance);

  auto sigs = [&](const TopicModel& m, const TopicLabelTable& l) {
    auto raw = make_signatures(m, l, c.signature_size);
    for (auto& s : raw) s = normalize_signature(s, norm);
    return raw;
  };
  const auto mis_sigs = sigs(mis, mis_labels);
  const auto fc_sigs = sigs(fc, fc_labels);
  const auto naive = map_by_keywords(mis_sigs, fc_sigs);
  const auto tfidf = map_by_tfidf(mis_sigs, fc_sigs, true);

  json rank_k = nullptr;
  try {
    rank_k = rank_k_quality(naive, mis_sigs, fc_sigs);
  } catch (const NoMatchedKeywords&) {
  }

  const std::vector<MappingResult>* chosen = &dist.mappings;
  if (c.mapping_method == MappingMethod::Naive) chosen = &naive;
  if (c.mapping_method == MappingMethod::Tfidf) chosen = &tfidf;

  json labels = json::array();
  for (const auto& l : mis_labels.labels()) labels.push_back({{"corpus", "tweets"}, {"label", l}});
  for (const auto& l : fc_labels.labels()) labels.push_back({{"corpus", "articles"}, {"label", l}});

  w.put_json("mappings.json", mapping_table_json(*chosen));
  w.put_json("methods.json", {{"distance", mapping_table_json(dist.mappings)},
                              {"distance_cutoff", dist.cutoff},
                              {"naive", mapping_table_json(naive)},
                              {"tfidf", mapping_table_json(tfidf)},
                              {"rank_k_quality", rank_k}});
  w.put_json("projection.json", {{"topics", labels}, {"projection", dist.projection}});
}

void stage_annotate(const PipelineConfig& c, StageWriter& w) {
  const auto tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  const auto gaz = Gazetteer::load(c.paths.gazetteer);
  const auto lex = SentimentLexicon::load(c.paths.lexicon);
  std::string text;
  std::map<std::string, std::size_t> polarity_counts;
  for (const auto& t : tweets) {
    const auto spans = recognize(t.text, gaz);
    const auto sentiment = classify_sentiment(t.text, lex);
    ++polarity_counts[to_string(sentiment.polarity)];
    text += json{{"id", t.id}, {"entities", spans}, {"sentiment", sentiment}}.dump() + "\n";
  }
  w.put("annotations.jsonl", text);
  const auto cov = entity_coverage(tweets, gaz);
  w.put_json("coverage.json", {{"count", cov.count}, {"fraction", cov.fraction}, {"sentiment", polarity_counts}});
}

void stage_recommend_sm(const PipelineConfig& c, StageWriter& w) {
  const auto norm = make_normalizer(c);
  const auto scorer = make_scorer(c, norm);
  const auto tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  const auto assignments = load_assignments(in_stage(c, Stage::FitTopics, "tweet_assignments.jsonl"));
  const auto annotations = load_annotations(in_stage(c, Stage::Annotate, "annotations.jsonl"));
  const auto pool = annotate_join(tweets, assignments, &annotations);

  std::string text;
  for (const auto& t : pool) {
    if (!t.tweet.misleading || !t.topic || !t.topic->known()) continue;
    const auto rec = recommend_counter_tweets(t, pool, c.k_sm, c.strict, c.relaxed, *scorer);
    text += recommendation_json(rec).dump() + "\n";
  }
  w.put("recommendations.jsonl", text);
}

void stage_recommend_fc(const PipelineConfig& c, StageWriter& w) {
  const auto norm = make_normalizer(c);
  const auto scorer = make_scorer(c, norm);
  const auto tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  const auto articles = load_articles(in_stage(c, Stage::Ingest, "articles.jsonl"));
  const auto tweet_assign = load_assignments(in_stage(c, Stage::FitTopics, "tweet_assignments.jsonl"));
  const auto article_assign = load_assignments(in_stage(c, Stage::FitTopics, "article_assignments.jsonl"));
  const auto graph = load_graph(in_stage(c, Stage::FitTopics, "cooccurrence.json"));
  const auto mappings = load_mappings(in_stage(c, Stage::MapTopics, "mappings.json"));
  const auto annotated = annotate_join(tweets, tweet_assign, nullptr);
  const ArticleIndex index{articles, article_assign};

  std::string text;
  std::map<std::string, std::size_t> tiers{{"Specific", 0}, {"Near", 0}, {"Broad", 0}};
  for (const auto& t : annotated) {
    if (!t.tweet.misleading || !t.topic || !t.topic->known()) continue;
    const auto rec = tiered_recommend(t, index, mappings, graph, *scorer, c.specific_threshold, c.k_fc);
    ++tiers[to_string(rec.tier)];
    text += recommendation_json(rec).dump() + "\n";
  }
  w.put("recommendations.jsonl", text);
  w.put_json("tiers.json", tiers);
}

void stage_evaluate(const PipelineConfig& c, StageWriter& w) {
  const auto norm = make_normalizer(c);
  const auto scorer = make_scorer(c, norm);
  const auto tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  const auto articles = load_articles(in_stage(c, Stage::Ingest, "articles.jsonl"));
  const auto tweet_assign = load_assignments(in_stage(c, Stage::FitTopics, "tweet_assignments.jsonl"));
  const auto article_assign = load_assignments(in_stage(c, Stage::FitTopics, "article_assignments.jsonl"));
  const auto annotations = load_annotations(in_stage(c, Stage::Annotate, "annotations.jsonl"));
  const auto mappings = load_mappings(in_stage(c, Stage::MapTopics, "mappings.json"));
  const auto annotated = annotate_join(tweets, tweet_assign, &annotations);

  EvalInputs inputs{annotated, ArticleIndex{articles, article_assign}, mappings, scorer.get()};
  std::vector<EvalReport> reports{run_evaluation(Approach::SocialMedia, inputs, c.eval),
                                  run_evaluation(Approach::FactCheck, inputs, c.eval)};
  json out = json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  w.put_json("report.json", out);
  w.put("report.txt", render_report_table(reports));
}

StageResult execute(const PipelineConfig& c, Stage s) {
  require_upstream(c, s);
  StageResult result;
  result.stage = s;
  if (stage_is_current(c, s)) {
    result.skipped = true;
    return result;
  }
  auto inputs = expected_inputs(c, s);
  if (!inputs) throw StaleUpstream(std::string(stage_name(s)) + ": upstream manifest missing");

  StageWriter w(stage_dir(c, s));
  switch (s) {
    case Stage::Ingest: stage_ingest(c, w); break;
    case Stage::FitTopics: stage_fit_topics(c, w); break;
    case Stage::MapTopics: stage_map_topics(c, w); break;
    case Stage::Annotate: stage_annotate(c, w); break;
    case Stage::RecommendSm: stage_recommend_sm(c, w); break;
    case Stage::RecommendFc: stage_recommend_fc(c, w); break;
    case Stage::Evaluate: stage_evaluate(c, w); break;
  }
  result.outputs = w.finish(s, settings_hash(c, s), *inputs);
  return result;
}

}  // namespace

// ---- hashing -------------------------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

// ---- stage graph ------------------------------------------------------------------

const char* stage_name(Stage s) noexcept {
  switch (s) {
    case Stage::Ingest: return "ingest";
    case Stage::FitTopics: return "fit-topics";
    case Stage::MapTopics: return "map-topics";
    case Stage::Annotate: return "annotate";
    case Stage::RecommendSm: return "recommend-sm";
    case Stage::RecommendFc: return "recommend-fc";
    case Stage::Evaluate: return "evaluate";
  }
  return "?";
}

std::optional<Stage> stage_from_name(std::string_view name) {
  for (Stage s : all_stages()) {
    if (name == stage_name(s)) return s;
  }
  return std::nullopt;
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> v{Stage::Ingest,      Stage::FitTopics,   Stage::MapTopics, Stage::Annotate,
                                    Stage::RecommendSm, Stage::RecommendFc, Stage::Evaluate};
  return v;
}

const std::vector<Stage>& upstream_of(Stage s) {
  static const std::map<Stage, std::vector<Stage>> deps{
      {Stage::Ingest, {}},
      {Stage::FitTopics, {Stage::Ingest}},
      {Stage::MapTopics, {Stage::FitTopics}},
      {Stage::Annotate, {Stage::Ingest}},
      {Stage::RecommendSm, {Stage::Ingest, Stage::FitTopics, Stage::Annotate}},
      {Stage::RecommendFc, {Stage::Ingest, Stage::FitTopics, Stage::MapTopics}},
      {Stage::Evaluate, {Stage::Ingest, Stage::FitTopics, Stage::MapTopics, Stage::Annotate}},
  };
  return deps.at(s);
}

fs::path stage_dir(const PipelineConfig& config, Stage s) { return config.out_dir / stage_name(s); }

// ---- lock ---------------------------------------------------------------------------

OutputLock::OutputLock(const fs::path& out_dir) : path_(out_dir / ".lock") {
  fs::create_directories(out_dir);
  const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY | O_CLOEXEC, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw Error("output directory is locked by another run (" + path_.string() +
                  "); remove the file if no run is active");
    }
    throw Error("cannot create lock " + path_.string() + ": " + std::strerror(errno));
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

// ---- public entry points ------------------------------------------------------------

bool stage_is_current(const PipelineConfig& c, Stage s) {
  auto m = read_manifest(c, s);
  if (!m) return false;
  if (m->value("settings", std::string{}) != settings_hash(c, s)) return false;
  auto inputs = expected_inputs(c, s);
  if (!inputs || (*m)["inputs"] != json(*inputs)) return false;
  for (const auto& [name, hash] : (*m)["outputs"].items()) {
    const fs::path p = stage_dir(c, s) / name;
    if (!fs::is_regular_file(p) || sha256_file(p) != hash.get<std::string>()) return false;
  }
  return true;
}

StageResult run_stage(const PipelineConfig& config, Stage s) {
  OutputLock lock(config.out_dir);
  return execute(config, s);
}

std::vector<StageResult> run_all(const PipelineConfig& config) {
  OutputLock lock(config.out_dir);
  std::vector<StageResult> results;
  for (Stage s : all_stages()) results.push_back(execute(config, s));
  return results;
}

Normalizer make_normalizer(const PipelineConfig& config) {
  StopwordSet stop = config.paths.stopwords.empty() ? StopwordSet::english()
                                                    : StopwordSet::load(config.paths.stopwords);
  return Normalizer(std::move(stop), config.stem);
}

std::unique_ptr<SentencePairScorer> make_scorer(const PipelineConfig& config, const Normalizer& normalizer) {
  if (!config.scorer_command.empty()) return std::make_unique<ProcessScorer>(config.scorer_command);
  auto table = std::make_shared<WordVectorTable>(WordVectorTable::load(config.paths.word_vectors));
  for (const auto& w : table->warnings()) std::cerr << "warning: " << w << '\n';
  return std::make_unique<WordVectorScorer>(std::move(table), normalizer);
}

std::map<std::string, std::string> stage_output_hashes(const PipelineConfig& config, Stage s) {
  std::map<std::string, std::string> out;
  if (auto m = read_manifest(config, s)) {
    for (const auto& [name, hash] : (*m)["outputs"].items()) out[name] = hash.get<std::string>();
  }
  return out;
}

// ---- artifact loading -------------------------------------------------------------------

std::vector<TopicAssignment> load_assignments(const fs::path& path) {
  std::vector<TopicAssignment> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line).get<TopicAssignment>());
  }
  return out;
}

std::map<std::string, TweetAnnotation> load_annotations(const fs::path& path) {
  std::map<std::string, TweetAnnotation> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    out[j.at("id").get<std::string>()] = {j.at("entities").get<std::vector<EntitySpan>>(),
                                          j.at("sentiment").get<SentimentLabel>()};
  }
  return out;
}

TopicModel load_model(const fs::path& path) { return read_json(path).get<TopicModel>(); }

CooccurrenceGraph load_graph(const fs::path& path) { return read_json(path).get<CooccurrenceGraph>(); }

std::vector<MappingResult> load_mappings(const fs::path& path) {
  return mapping_table_from_json(read_json(path));
}

std::vector<AnnotatedTweet> annotate_join(const std::vector<Tweet>& tweets,
                                          const std::vector<TopicAssignment>& assignments,
                                          const std::map<std::string, TweetAnnotation>* annotations) {
  std::map<std::string, const TopicAssignment*> by_id;
  for (const auto& a : assignments) by_id[a.doc_id] = &a;
  std::vector<AnnotatedTweet> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    AnnotatedTweet a;
    a.tweet = t;
    if (auto it = by_id.find(t.id); it != by_id.end()) a.topic = *it->second;
    if (annotations) {
      if (auto it = annotations->find(t.id); it != annotations->end()) {
        a.entities = it->second.entities;
        a.sentiment = it->second.sentiment;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

AssignThresholds thresholds_for(const CorpusTopicConfig& c, std::size_t k) {
  AssignThresholds t = AssignThresholds::defaults_for(k);
  if (c.tau_primary) t.tau_primary = *c.tau_primary;
  if (c.tau_secondary) t.tau_secondary = *c.tau_secondary;
  return t;
}

Artifacts load_artifacts(const PipelineConfig& c) {
  for (Stage s : {Stage::Ingest, Stage::FitTopics, Stage::MapTopics, Stage::Annotate}) {
    if (!stage_is_current(c, s)) {
      throw StaleUpstream(std::string("artifacts of ") + stage_name(s) + " are missing or out of date");
    }
  }
  Artifacts a;
  a.tweets = load_tweets(in_stage(c, Stage::Ingest, "tweets.jsonl"));
  a.articles = load_articles(in_stage(c, Stage::Ingest, "articles.jsonl"));
  a.tweet_model = load_model(in_stage(c, Stage::FitTopics, "tweet_model.json"));
  a.tweet_labels = TopicLabelTable::load(c.paths.tweet_labels);
  a.tweet_labels.validate_for(a.tweet_model.num_topics);
  a.tweet_thresholds = thresholds_for(c.tweet_topics, a.tweet_model.num_topics);
  a.article_assignments = load_assignments(in_stage(c, Stage::FitTopics, "article_assignments.jsonl"));
  a.mappings = load_mappings(in_stage(c, Stage::MapTopics, "mappings.json"));
  a.cooccurrence = load_graph(in_stage(c, Stage::FitTopics, "cooccurrence.json"));
  const auto tweet_assign = load_assignments(in_stage(c, Stage::FitTopics, "tweet_assignments.jsonl"));
  const auto annotations = load_annotations(in_stage(c, Stage::Annotate, "annotations.jsonl"));
  a.pool = annotate_join(a.tweets, tweet_assign, &annotations);
  a.gazetteer = Gazetteer::load(c.paths.gazetteer);
  a.lexicon = SentimentLexicon::load(c.paths.lexicon);
  for (Stage s : {Stage::Ingest, Stage::FitTopics, Stage::MapTopics, Stage::Annotate}) {
    for (const auto& [name, hash] : stage_output_hashes(c, s)) {
      a.hashes[std::string(stage_name(s)) + "/" + name] = hash;
    }
  }
  return a;
}

}  // namespace amir::cli
