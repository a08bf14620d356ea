#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amir/textprep.hpp"

namespace amir {

class WordVectorTable {
 public:
  WordVectorTable() = default;

  /// Text format: a token followed by D reals per line. An optional
  /// `<count> <dim>` header line is accepted. Tokens are lowercased; a
  /// repeated token replaces the earlier vector and records a warning.
  static WordVectorTable load(const std::filesystem::path& path);
  static WordVectorTable read(std::istream& in);

  void add(std::string token, std::vector<double> vec);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<double>* find(const std::string& token) const;
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<std::string> warnings_;
};

struct DocEmbedding {
  std::vector<double> vector;
  std::size_t in_vocab_count = 0;
  bool is_zero = true;
};

/// Mean of the in-vocabulary token vectors; OOV tokens are skipped.
/// Throws EmptyVectorTable when the table has no dimension yet.
DocEmbedding embed_document(const TokenStream& tokens, const WordVectorTable& table);

/// Throws DimensionMismatch and ZeroVector.
double cosine(std::span<const double> a, std::span<const double> b);

struct PairScore {
  double value = 0.0;
  bool degenerate = false;  // a zero embedding forced the score to 0
};

/// Sentence-pair similarity provider. Scores lie in [-1, 1].
class SentencePairScorer {
 public:
  virtual ~SentencePairScorer() = default;
  virtual std::string name() const = 0;
  virtual PairScore score(std::string_view a, std::string_view b) const = 0;
  /// Providers that cannot be called concurrently return false; the engine
  /// then routes calls through a mutex (see pair_score).
  virtual bool reentrant() const { return true; }
};

/// tokenize -> normalize -> embed_document -> cosine.
class WordVectorScorer final : public SentencePairScorer {
 public:
  WordVectorScorer(std::shared_ptr<const WordVectorTable> table, Normalizer normalizer);

  std::string name() const override { return "word-vectors"; }
  PairScore score(std::string_view a, std::string_view b) const override;

  DocEmbedding embed(std::string_view text) const;

 private:
  std::shared_ptr<const WordVectorTable> table_;
  Normalizer normalizer_;
};

PairScore pair_score(const SentencePairScorer& scorer, std::string_view a, std::string_view b);

// ---- external provider line protocol -----------------------------------
//
// request:  "SCORE <len_a> <len_b>\n<textA>\n<textB>\n"  (lengths in bytes)
// response: "OK <score with 6 decimals>\n"  or  "ERR <message>\n"

std::string encode_score_request(std::string_view a, std::string_view b);
std::string format_score_response(double score);

struct ScoreRequest {
  std::string a;
  std::string b;
};

/// Reads one request; nullopt at clean end of stream. Throws MalformedLine
/// on a protocol violation.
std::optional<ScoreRequest> read_score_request(std::istream& in);
/// Parses "OK <float>"; throws Error for anything else.
double parse_score_response(std::string_view line);

/// Answers requests from `in` on `out` until end of stream.
void serve_score_protocol(std::istream& in, std::ostream& out, const SentencePairScorer& scorer);

/// Scorer backed by a child process speaking the line protocol on its
/// stdin/stdout. Calls are serialized.
class ProcessScorer final : public SentencePairScorer {
 public:
  explicit ProcessScorer(std::vector<std::string> argv);
  ~ProcessScorer() override;
  ProcessScorer(const ProcessScorer&) = delete;
  ProcessScorer& operator=(const ProcessScorer&) = delete;

  std::string name() const override;
  PairScore score(std::string_view a, std::string_view b) const override;
  bool reentrant() const override { return false; }

 private:
  std::vector<std::string> argv_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  mutable std::mutex mu_;
  mutable std::string buffer_;
};

}  // namespace amir
