#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amir/evaluate.hpp"
#include "amir/mapping.hpp"
#include "amir/rebuttal.hpp"
#include "amir/topics.hpp"

namespace amir::cli {

struct InputPaths {
  std::filesystem::path tweets;
  std::filesystem::path articles;
  std::filesystem::path word_vectors;
  std::filesystem::path gazetteer;
  std::filesystem::path lexicon;
  std::filesystem::path stopwords;
  std::filesystem::path tweet_labels;
  std::filesystem::path article_labels;
};

struct CorpusTopicConfig {
  std::size_t k_min = 2;
  std::size_t k_max = 2;
  std::optional<double> tau_primary;  // default 1.5 / K
  std::optional<double> tau_secondary;
};

/// Effective pipeline configuration. Relative paths in the file resolve
/// against the file's directory; `out_dir` from a flag resolves against the
/// working directory.
struct PipelineConfig {
  InputPaths paths;
  bool stem = true;

  LdaParams lda;  // num_topics unused
  std::size_t coherence_top_m = 10;
  CorpusTopicConfig tweet_topics;
  CorpusTopicConfig article_topics;
  SubtopicOptions subtopics;

  MappingMethod mapping_method = MappingMethod::Distance;
  DistanceMappingOptions distance;
  std::size_t signature_size = 15;

  std::size_t k_sm = 10;
  std::size_t k_fc = 15;
  double specific_threshold = kSpecificThreshold;
  MatchCriteria strict = MatchCriteria::strict_default();
  MatchCriteria relaxed = MatchCriteria::relaxed_default();

  EvalConfig eval;

  /// External scorer command (line protocol); empty means word vectors.
  std::vector<std::string> scorer_command;

  std::filesystem::path out_dir;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<double> threshold;
  std::optional<std::filesystem::path> out;
};

/// Reads, resolves and validates. Throws ConfigInvalid.
PipelineConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Range and existence checks. Throws ConfigInvalid.
void validate(const PipelineConfig& config);

/// Path-free description of the settings a stage depends on; hashed into
/// the stage manifest.
nlohmann::json stage_settings(const PipelineConfig& config, const std::string& stage);

}  // namespace amir::cli
