#include "amir/cli/config.hpp"

#include <fstream>
#include <set>

#include "amir/error.hpp"
#include "amir/json_io.hpp"

namespace amir::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const json& section(const json& root, const char* name) {
  static const json empty = json::object();
  auto it = root.find(name);
  if (it == root.end() || it->is_null()) return empty;
  if (!it->is_object()) throw ConfigInvalid(std::string("'") + name + "' must be an object");
  return *it;
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("'") + key + "': " + e.what());
  }
}

template <typename T>
void read_optional(const json& obj, const char* key, std::optional<T>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  T v{};
  read_field(obj, key, v);
  out = v;
}

fs::path resolve(const fs::path& base, const json& paths, const char* key, bool required) {
  auto it = paths.find(key);
  if (it == paths.end() || it->is_null()) {
    if (required) throw ConfigInvalid(std::string("paths.") + key + " is required");
    return {};
  }
  if (!it->is_string()) throw ConfigInvalid(std::string("paths.") + key + " must be a string");
  fs::path p = it->get<std::string>();
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

void read_topics(const json& obj, CorpusTopicConfig& c) {
  read_field(obj, "k_min", c.k_min);
  read_field(obj, "k_max", c.k_max);
  read_optional(obj, "tau_primary", c.tau_primary);
  read_optional(obj, "tau_secondary", c.tau_secondary);
}

void check_topics(const CorpusTopicConfig& c, const char* which) {
  const std::string w = which;
  if (c.k_min < 2 || c.k_min > c.k_max) throw ConfigInvalid(w + ": need 2 <= k_min <= k_max");
  const double def = 1.5 / static_cast<double>(c.k_max);
  const double tp = c.tau_primary.value_or(def);
  const double ts = c.tau_secondary.value_or(def);
  if (!(ts > 0.0 && ts <= tp && tp < 1.0)) {
    throw ConfigInvalid(w + ": thresholds must satisfy 0 < tau_secondary <= tau_primary < 1");
  }
}

json topics_json(const CorpusTopicConfig& c) {
  return {{"k_min", c.k_min},
          {"k_max", c.k_max},
          {"tau_primary", c.tau_primary ? json(*c.tau_primary) : json(nullptr)},
          {"tau_secondary", c.tau_secondary ? json(*c.tau_secondary) : json(nullptr)}};
}

}  // namespace

PipelineConfig load_config(const fs::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ConfigInvalid("config " + path.string() + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigInvalid("config must be a JSON object");
  static const std::set<std::string> known{"paths",   "stem",     "lda",      "tweet_topics",
                                           "article_topics", "subtopics", "mapping", "rebuttal",
                                           "evaluate", "scorer",  "out"};
  for (const auto& [key, value] : root.items()) {
    if (!known.count(key)) throw ConfigInvalid("unknown config key '" + key + "'");
  }

  const fs::path base = fs::absolute(path).parent_path();
  PipelineConfig c;
  const json& paths = section(root, "paths");
  c.paths.tweets = resolve(base, paths, "tweets", true);
  c.paths.articles = resolve(base, paths, "articles", true);
  c.paths.word_vectors = resolve(base, paths, "word_vectors", true);
  c.paths.gazetteer = resolve(base, paths, "gazetteer", true);
  c.paths.lexicon = resolve(base, paths, "lexicon", true);
  c.paths.stopwords = resolve(base, paths, "stopwords", false);
  c.paths.tweet_labels = resolve(base, paths, "tweet_labels", true);
  c.paths.article_labels = resolve(base, paths, "article_labels", true);
  read_field(root, "stem", c.stem);

  const json& lda = section(root, "lda");
  read_optional(lda, "alpha", c.lda.alpha);
  read_field(lda, "beta", c.lda.beta);
  read_field(lda, "iterations", c.lda.iterations);
  read_field(lda, "seed", c.lda.seed);
  read_field(lda, "coherence_top_m", c.coherence_top_m);
  read_topics(section(root, "tweet_topics"), c.tweet_topics);
  read_topics(section(root, "article_topics"), c.article_topics);

  const json& sub = section(root, "subtopics");
  read_field(sub, "max_sub", c.subtopics.max_sub);
  read_field(sub, "min_docs", c.subtopics.min_docs);
  read_field(sub, "keywords", c.subtopics.keywords);

  const json& mapping = section(root, "mapping");
  if (auto it = mapping.find("method"); it != mapping.end() && !it->is_null()) {
    try {
      c.mapping_method = mapping_method_from_string(it->get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigInvalid(std::string("mapping.method: ") + e.what());
    }
  }
  read_optional(mapping, "cutoff", c.distance.cutoff);
  read_field(mapping, "sd_multiplier", c.distance.sd_multiplier);
  read_field(mapping, "signature_size", c.signature_size);

  const json& reb = section(root, "rebuttal");
  read_field(reb, "k_sm", c.k_sm);
  read_field(reb, "k_fc", c.k_fc);
  read_field(reb, "specific_threshold", c.specific_threshold);
  read_field(reb, "strict", c.strict);
  read_field(reb, "relaxed", c.relaxed);

  const json& ev = section(root, "evaluate");
  read_field(ev, "cutoffs", c.eval.cutoffs);
  read_field(ev, "max_queries", c.eval.max_queries);
  read_field(ev, "conventional_ap", c.eval.conventional_ap);

  const json& scorer = section(root, "scorer");
  read_field(scorer, "command", c.scorer_command);

  std::string out = "out";
  read_field(root, "out", out);
  c.out_dir = fs::path(out).is_absolute() ? fs::path(out) : (base / out).lexically_normal();

  if (overrides.seed) c.lda.seed = *overrides.seed;
  if (overrides.k) c.k_sm = c.k_fc = *overrides.k;
  if (overrides.threshold) c.specific_threshold = *overrides.threshold;
  if (overrides.out) c.out_dir = fs::absolute(*overrides.out).lexically_normal();

  c.subtopics.lda = c.lda;
  c.subtopics.top_m = c.coherence_top_m;
  c.eval.strict = c.strict;
  c.eval.threshold = c.specific_threshold;

  validate(c);
  return c;
}

void validate(const PipelineConfig& c) {
  auto must_exist = [](const fs::path& p, const char* what) {
    if (!p.empty() && !fs::is_regular_file(p)) {
      throw ConfigInvalid(std::string(what) + " not found: " + p.string());
    }
  };
  must_exist(c.paths.tweets, "tweets");
  must_exist(c.paths.articles, "articles");
  must_exist(c.paths.word_vectors, "word vectors");
  must_exist(c.paths.gazetteer, "gazetteer");
  must_exist(c.paths.lexicon, "sentiment lexicon");
  must_exist(c.paths.stopwords, "stopwords");
  must_exist(c.paths.tweet_labels, "tweet label table");
  must_exist(c.paths.article_labels, "article label table");

  if (c.lda.beta <= 0.0) throw ConfigInvalid("lda.beta must be positive");
  if (c.lda.alpha && *c.lda.alpha <= 0.0) throw ConfigInvalid("lda.alpha must be positive");
  if (c.lda.iterations == 0) throw ConfigInvalid("lda.iterations must be >= 1");
  if (c.coherence_top_m < 2) throw ConfigInvalid("lda.coherence_top_m must be >= 2");
  check_topics(c.tweet_topics, "tweet_topics");
  check_topics(c.article_topics, "article_topics");
  if (c.subtopics.keywords == 0) throw ConfigInvalid("subtopics.keywords must be >= 1");
  if (c.signature_size == 0) throw ConfigInvalid("mapping.signature_size must be >= 1");
  if (c.distance.cutoff && *c.distance.cutoff < 0.0) throw ConfigInvalid("mapping.cutoff must be >= 0");
  if (c.k_sm == 0 || c.k_fc == 0) throw ConfigInvalid("recommendation K must be >= 1");
  if (!(c.specific_threshold >= -1.0 && c.specific_threshold <= 1.0)) {
    throw ConfigInvalid("specific_threshold must lie in [-1, 1]");
  }
  validate_criteria(c.strict, c.relaxed);
  if (c.eval.cutoffs.empty()) throw ConfigInvalid("evaluate.cutoffs must be non-empty");
  for (auto k : c.eval.cutoffs) {
    if (k == 0) throw ConfigInvalid("evaluate.cutoffs must be >= 1");
  }
}

nlohmann::json stage_settings(const PipelineConfig& c, const std::string& stage) {
  json lda = {{"alpha", c.lda.alpha ? json(*c.lda.alpha) : json(nullptr)},
              {"beta", c.lda.beta},
              {"iterations", c.lda.iterations},
              {"seed", c.lda.seed},
              {"coherence_top_m", c.coherence_top_m}};
  if (stage == "fit-topics") {
    return {{"stem", c.stem},
            {"lda", lda},
            {"tweet_topics", topics_json(c.tweet_topics)},
            {"article_topics", topics_json(c.article_topics)},
            {"subtopics",
             {{"max_sub", c.subtopics.max_sub},
              {"min_docs", c.subtopics.min_docs},
              {"keywords", c.subtopics.keywords}}}};
  }
  if (stage == "map-topics") {
    return {{"stem", c.stem},
            {"method", to_string(c.mapping_method)},
            {"cutoff", c.distance.cutoff ? json(*c.distance.cutoff) : json(nullptr)},
            {"sd_multiplier", c.distance.sd_multiplier},
            {"signature_size", c.signature_size}};
  }
  json scorer = c.scorer_command;
  if (stage == "recommend-sm") {
    return {{"stem", c.stem}, {"k", c.k_sm}, {"strict", c.strict}, {"relaxed", c.relaxed}, {"scorer", scorer}};
  }
  if (stage == "recommend-fc") {
    return {{"stem", c.stem}, {"k", c.k_fc}, {"specific_threshold", c.specific_threshold}, {"scorer", scorer}};
  }
  if (stage == "evaluate") {
    return {{"stem", c.stem},
            {"cutoffs", c.eval.cutoffs},
            {"max_queries", c.eval.max_queries},
            {"conventional_ap", c.eval.conventional_ap},
            {"strict", c.strict},
            {"threshold", c.specific_threshold},
            {"scorer", scorer}};
  }
  return json::object();
}

}  // namespace amir::cli
