#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amir/cli/config.hpp"
#include "amir/similarity.hpp"
#include "amir/textprep.hpp"

namespace amir::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

enum class Stage { Ingest, FitTopics, MapTopics, Annotate, RecommendSm, RecommendFc, Evaluate };

const char* stage_name(Stage s) noexcept;
std::optional<Stage> stage_from_name(std::string_view name);
/// Topological order.
const std::vector<Stage>& all_stages();
const std::vector<Stage>& upstream_of(Stage s);

/// `<out>/<stage-name>`
std::filesystem::path stage_dir(const PipelineConfig& config, Stage s);

struct StageResult {
  Stage stage = Stage::Ingest;
  bool skipped = false;  // already up to date
  std::vector<std::string> outputs;
};

/// Exclusive writer guard: `<out>/.lock`, created with O_EXCL and removed on
/// destruction. Throws Error when another process holds it.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& out_dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

/// True when the stage's manifest matches its current inputs, settings and
/// outputs.
bool stage_is_current(const PipelineConfig& config, Stage s);

/// Runs one stage, or nothing if it is current. Throws StaleUpstream when an
/// upstream stage is missing or out of date.
StageResult run_stage(const PipelineConfig& config, Stage s);

/// Every stage in order, each skipped when current. Takes the lock once.
std::vector<StageResult> run_all(const PipelineConfig& config);

/// Stopword set and stemming exactly as the stages use them.
Normalizer make_normalizer(const PipelineConfig& config);

/// External process scorer when configured, word vectors otherwise.
std::unique_ptr<SentencePairScorer> make_scorer(const PipelineConfig& config,
                                                const Normalizer& normalizer);

/// Output file name -> content hash, from a stage's manifest; empty if the
/// manifest is absent.
std::map<std::string, std::string> stage_output_hashes(const PipelineConfig& config, Stage s);

}  // namespace amir::cli
