#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amir/assignment.hpp"

namespace amir {

/// A labeled social post. `text` is kept verbatim, hashtags included.
struct Tweet {
  std::string id;
  std::string text;
  bool misleading = false;
  std::uint64_t replies = 0;
  std::uint64_t retweets = 0;
  std::uint64_t likes = 0;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

/// A fact-checked article. `content` may be empty; matching uses the title.
struct FactArticle {
  std::string id;
  std::string title;
  std::string content;
  std::string source_site;
  std::optional<std::string> published;  // ISO-8601 date

  friend bool operator==(const FactArticle&, const FactArticle&) = default;
};

struct TopicCount {
  std::size_t count = 0;
  double percentage = 0.0;

  friend bool operator==(const TopicCount&, const TopicCount&) = default;
};

struct CorpusStats {
  std::size_t n_tweets = 0;
  std::size_t n_misleading = 0;
  std::size_t n_articles = 0;
  // Keyed by topic label; documents without a topic land under "Unknown".
  std::map<std::string, TopicCount> per_topic_counts;
};

// JSON-lines readers. Both throw EmptyFile, MalformedRecord(line_no) and
// DuplicateId(id); records are returned in file order. Blank lines are
// skipped but still counted for line numbers.
std::vector<Tweet> load_tweets(const std::filesystem::path& path);
std::vector<FactArticle> load_articles(const std::filesystem::path& path);
std::vector<Tweet> read_tweets(std::istream& in, const std::string& source_name);
std::vector<FactArticle> read_articles(std::istream& in, const std::string& source_name);

void write_tweets(std::ostream& out, std::span<const Tweet> tweets);
void write_articles(std::ostream& out, std::span<const FactArticle> articles);
void save_tweets(const std::filesystem::path& path, std::span<const Tweet> tweets);
void save_articles(const std::filesystem::path& path, std::span<const FactArticle> articles);

/// Per-topic distribution of the tweet corpus keyed on primary topic.
/// Throws MissingAssignment for any tweet without an assignment.
CorpusStats corpus_stats(std::span<const Tweet> tweets,
                         std::span<const TopicAssignment> assignments,
                         std::size_t n_articles = 0);

}  // namespace amir
