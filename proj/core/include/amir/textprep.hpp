#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace amir {

struct TokenStream {
  std::vector<std::string> tokens;
  std::string source_id;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

/// A token together with the byte range it occupies in the source text.
struct TokenSpan {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Splits on whitespace (ASCII and the common Unicode spaces) and on
/// punctuation. `#tag` keeps its prefix, URLs stay whole, and hyphens or
/// apostrophes between two word characters are kept inside the token.
/// Bytes >= 0x80 count as word characters so UTF-8 letters survive.
std::vector<TokenSpan> tokenize_spans(std::string_view text);
TokenStream tokenize(std::string_view text, std::string source_id = {});

bool is_hashtag(std::string_view token) noexcept;
bool is_url(std::string_view token) noexcept;
std::string to_lower_ascii(std::string_view s);

/// Porter suffix stripper (the published reference algorithm, including its
/// `bli`/`logi` revisions). Words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

class StopwordSet {
 public:
  StopwordSet() = default;
  StopwordSet(std::initializer_list<std::string_view> words);

  /// One lowercase term per line; `#` comment lines and blanks ignored.
  static StopwordSet load(const std::filesystem::path& path);
  /// Built-in English list; identical to data/stopwords_en.txt.
  static const StopwordSet& english();

  bool contains(std::string_view word) const;
  void insert(std::string_view word);
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Lowercases, drops stopwords and (optionally) stems. Hashtags and URLs are
/// only lowercased. Stemming runs to a fixpoint and a token whose stem is a
/// stopword is dropped, which makes `normalize` idempotent.
class Normalizer {
 public:
  Normalizer(StopwordSet stopwords, bool stem) : stopwords_(std::move(stopwords)), stem_(stem) {}

  TokenStream operator()(const TokenStream& stream) const;
  /// Normalizes one term; returns an empty string when the term is dropped.
  std::string term(std::string_view token) const;

  bool stems() const noexcept { return stem_; }
  const StopwordSet& stopwords() const noexcept { return stopwords_; }

 private:
  StopwordSet stopwords_;
  bool stem_;
};

TokenStream normalize(const TokenStream& stream, const StopwordSet& stopwords, bool stem);

}  // namespace amir
