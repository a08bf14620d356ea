#include "amir/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "amir/error.hpp"
#include "amir/json_io.hpp"

namespace amir {
namespace {

using nlohmann::json;

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

const json& require(const json& rec, const char* field, std::size_t line_no) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) {
    throw MalformedRecord(line_no, std::string("missing field '") + field + "'");
  }
  return *it;
}

std::string require_string(const json& rec, const char* field, std::size_t line_no) {
  const json& v = require(rec, field, line_no);
  if (!v.is_string()) throw MalformedRecord(line_no, std::string("'") + field + "' is not a string");
  return v.get<std::string>();
}

std::string optional_string(const json& rec, const char* field, std::size_t line_no) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return {};
  if (!it->is_string()) throw MalformedRecord(line_no, std::string("'") + field + "' is not a string");
  return it->get<std::string>();
}

std::uint64_t count_field(const json& rec, const char* field, std::size_t line_no) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return 0;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    auto v = it->get<std::int64_t>();
    if (v < 0) throw MalformedRecord(line_no, std::string("'") + field + "' is negative");
    return static_cast<std::uint64_t>(v);
  }
  throw MalformedRecord(line_no, std::string("'") + field + "' is not an integer");
}

Tweet parse_tweet(const json& rec, std::size_t line_no) {
  Tweet t;
  t.id = require_string(rec, "id", line_no);
  if (t.id.empty()) throw MalformedRecord(line_no, "empty id");
  t.text = require_string(rec, "text", line_no);
  if (blank(t.text)) throw MalformedRecord(line_no, "empty text");
  const json& m = require(rec, "misleading", line_no);
  if (!m.is_boolean()) throw MalformedRecord(line_no, "'misleading' is not a boolean");
  t.misleading = m.get<bool>();
  t.replies = count_field(rec, "replies", line_no);
  t.retweets = count_field(rec, "retweets", line_no);
  t.likes = count_field(rec, "likes", line_no);
  return t;
}

FactArticle parse_article(const json& rec, std::size_t line_no) {
  FactArticle a;
  a.id = require_string(rec, "id", line_no);
  if (a.id.empty()) throw MalformedRecord(line_no, "empty id");
  a.title = require_string(rec, "title", line_no);
  if (blank(a.title)) throw MalformedRecord(line_no, "empty title");
  a.content = optional_string(rec, "content", line_no);
  a.source_site = optional_string(rec, "source_site", line_no);
  auto pub = optional_string(rec, "published", line_no);
  if (!pub.empty()) a.published = std::move(pub);
  return a;
}

template <typename Record, typename Parse>
std::vector<Record> read_jsonl(std::istream& in, const std::string& source_name, Parse parse) {
  std::vector<Record> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool any_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    any_line = true;
    if (blank(line)) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!rec.is_object()) throw MalformedRecord(line_no, "not a JSON object");
    Record r = parse(rec, line_no);
    if (!seen.insert(r.id).second) throw DuplicateId(r.id);
    out.push_back(std::move(r));
  }
  if (!any_line || out.empty()) throw EmptyFile(source_name);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<Tweet> read_tweets(std::istream& in, const std::string& source_name) {
  return read_jsonl<Tweet>(in, source_name, parse_tweet);
}

std::vector<FactArticle> read_articles(std::istream& in, const std::string& source_name) {
  return read_jsonl<FactArticle>(in, source_name, parse_article);
}

std::vector<Tweet> load_tweets(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_tweets(in, path.string());
}

std::vector<FactArticle> load_articles(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_articles(in, path.string());
}

void write_tweets(std::ostream& out, std::span<const Tweet> tweets) {
  for (const auto& t : tweets) out << json(t).dump() << '\n';
}

void write_articles(std::ostream& out, std::span<const FactArticle> articles) {
  for (const auto& a : articles) out << json(a).dump() << '\n';
}

void save_tweets(const std::filesystem::path& path, std::span<const Tweet> tweets) {
  auto out = open_out(path);
  write_tweets(out, tweets);
}

void save_articles(const std::filesystem::path& path, std::span<const FactArticle> articles) {
  auto out = open_out(path);
  write_articles(out, articles);
}

CorpusStats corpus_stats(std::span<const Tweet> tweets,
                         std::span<const TopicAssignment> assignments, std::size_t n_articles) {
  std::unordered_map<std::string, const TopicAssignment*> by_id;
  by_id.reserve(assignments.size());
  for (const auto& a : assignments) by_id.emplace(a.doc_id, &a);

  CorpusStats stats;
  stats.n_tweets = tweets.size();
  stats.n_articles = n_articles;
  for (const auto& t : tweets) {
    if (t.misleading) ++stats.n_misleading;
    auto it = by_id.find(t.id);
    if (it == by_id.end()) throw MissingAssignment(t.id);
    ++stats.per_topic_counts[label_or_unknown(it->second->primary)].count;
  }
  if (!tweets.empty()) {
    const double n = static_cast<double>(tweets.size());
    for (auto& [label, tc] : stats.per_topic_counts) {
      tc.percentage = 100.0 * static_cast<double>(tc.count) / n;
    }
  }
  return stats;
}

}  // namespace amir
