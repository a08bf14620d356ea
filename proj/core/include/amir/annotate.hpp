#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amir/corpus.hpp"

namespace amir {

inline constexpr std::string_view kVaccineType = "VAC_TYPE";

struct EntitySpan {
  std::string surface;
  std::size_t start = 0;  // byte offsets, [start, end)
  std::size_t end = 0;
  std::string label;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
  friend auto operator<=>(const EntitySpan&, const EntitySpan&) = default;
};

/// Entity class -> lowercase terms. A term belongs to at most one class.
class Gazetteer {
 public:
  Gazetteer() = default;

  /// TSV `label<TAB>term`; blank lines and `#` comments ignored.
  static Gazetteer load(const std::filesystem::path& path);

  /// Throws InvalidArgument if the term is already filed under another class.
  void add(const std::string& label, std::string_view term);

  const std::map<std::string, std::set<std::string>>& classes() const noexcept { return classes_; }
  std::size_t max_term_tokens() const noexcept { return max_tokens_; }
  /// Label of a term given as space-joined lowercase tokens.
  std::optional<std::string> lookup(const std::string& joined_tokens) const;

 private:
  std::map<std::string, std::set<std::string>> classes_;
  std::unordered_map<std::string, std::string> index_;
  std::size_t max_tokens_ = 0;
};

/// Pluggable statistical tagger that the gazetteer overrides.
class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  virtual std::vector<EntitySpan> tag(std::string_view text) const = 0;
};

/// Gazetteer longest match (case-insensitive, token aligned; multi-word
/// terms only across plain whitespace), then base-tagger spans that do not
/// overlap a gazetteer span. Output is sorted and non-overlapping.
std::vector<EntitySpan> recognize(std::string_view text, const Gazetteer& gazetteer,
                                  const EntityTagger* base = nullptr);

struct NerMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Exact span-and-label matching, micro-averaged. Throws DocMismatch.
NerMetrics evaluate_ner(std::span<const std::vector<EntitySpan>> predicted,
                        std::span<const std::vector<EntitySpan>> gold);

struct EntityCoverage {
  std::size_t count = 0;
  double fraction = 0.0;
};

EntityCoverage entity_coverage(std::span<const Tweet> tweets, const Gazetteer& gazetteer,
                               const EntityTagger* base = nullptr);

// ---- sentiment ----------------------------------------------------------

enum class Polarity { Positive, Negative, Neutral };

const char* to_string(Polarity p) noexcept;
Polarity polarity_from_string(std::string_view s);

struct SentimentLabel {
  Polarity polarity = Polarity::Neutral;
  double compound = 0.0;

  friend bool operator==(const SentimentLabel&, const SentimentLabel&) = default;
};

inline constexpr double kPositiveThreshold = 0.05;
inline constexpr double kNegativeThreshold = -0.05;

Polarity polarity_of(double compound) noexcept;

class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::unordered_map<std::string, double> valences)
      : valences_(std::move(valences)) {}

  /// TSV `term<TAB>valence`; further columns are ignored, so the common
  /// four-column valence lexicon files load as-is.
  static SentimentLexicon load(const std::filesystem::path& path);

  std::optional<double> valence(std::string_view lowered) const;
  std::size_t size() const noexcept { return valences_.size(); }

 private:
  std::unordered_map<std::string, double> valences_;
};

/// Valence-sum scorer: negation flips (x -0.74) over the three preceding
/// words, booster/dampener words with 0.95/0.9 decay, capitalisation
/// emphasis, the "but" shift and ! / ? emphasis. compound = s / sqrt(s^2 + 15).
SentimentLabel classify_sentiment(std::string_view text, const SentimentLexicon& lexicon);

}  // namespace amir
