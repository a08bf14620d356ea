#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace amir::test {

PlantedCorpus planted_corpus(std::size_t n_docs, std::size_t topics, std::size_t words_per_topic,
                             std::size_t doc_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PlantedCorpus out;
  for (std::size_t d = 0; d < n_docs; ++d) {
    const std::size_t t = d % topics;
    std::uniform_int_distribution<std::size_t> pick(0, words_per_topic - 1);
    TokenStream doc;
    doc.source_id = "d" + std::to_string(d);
    for (std::size_t i = 0; i < doc_len; ++i) {
      doc.tokens.push_back("t" + std::to_string(t) + "w" + std::to_string(pick(rng)));
    }
    out.docs.push_back(std::move(doc));
    out.truth.push_back(t);
  }
  return out;
}

namespace {

void add_group_docs(std::vector<TokenStream>& into, const std::string& group, std::size_t n,
                    std::size_t doc_len, std::mt19937_64& rng, const std::string& prefix) {
  // A few dominant words per group keep signatures stable across corpora.
  std::discrete_distribution<std::size_t> pick({8, 7, 6, 5, 4, 3, 2, 2, 1, 1, 1, 1});
  for (std::size_t d = 0; d < n; ++d) {
    TokenStream doc;
    doc.source_id = prefix + group + std::to_string(d);
    for (std::size_t i = 0; i < doc_len; ++i) doc.tokens.push_back(group + "w" + std::to_string(pick(rng)));
    into.push_back(std::move(doc));
  }
}

}  // namespace

PlantedTwins planted_twins(std::size_t docs_per_group, std::size_t doc_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PlantedTwins out;
  for (const char* g : {"alpha", "beta", "delta"}) add_group_docs(out.misleading, g, docs_per_group, doc_len, rng, "m");
  for (const char* g : {"alpha", "beta"}) add_group_docs(out.factcheck, g, docs_per_group, doc_len, rng, "f");
  return out;
}

double argmax_purity(const std::vector<std::vector<double>>& theta_rows,
                     const std::vector<std::size_t>& truth, std::size_t topics) {
  std::map<std::size_t, std::map<std::size_t, std::size_t>> votes;  // truth -> argmax -> count
  std::vector<std::size_t> argmax(theta_rows.size());
  for (std::size_t i = 0; i < theta_rows.size(); ++i) {
    const auto& r = theta_rows[i];
    argmax[i] = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    ++votes[truth[i]][argmax[i]];
  }
  std::size_t agree = 0;
  for (std::size_t t = 0; t < topics; ++t) {
    std::size_t best = 0;
    for (const auto& [k, c] : votes[t]) best = std::max(best, c);
    agree += best;
  }
  return static_cast<double>(agree) / static_cast<double>(theta_rows.size());
}

FunctionScorer pinned_scorer(std::map<std::string, double> by_candidate, double fallback) {
  return FunctionScorer([table = std::move(by_candidate), fallback](std::string_view, std::string_view b) {
    auto it = table.find(std::string(b));
    return it == table.end() ? fallback : it->second;
  });
}

FunctionScorer constant_scorer(double value) {
  return FunctionScorer([value](std::string_view, std::string_view) { return value; });
}

AnnotatedTweet annotated(std::string id, std::string text, bool misleading,
                         std::optional<std::string> topic,
                         std::vector<std::string> entity_surfaces, Polarity polarity) {
  AnnotatedTweet t;
  t.tweet.id = id;
  t.tweet.text = std::move(text);
  t.tweet.misleading = misleading;
  if (topic) t.topic = assignment(id, topic);
  std::vector<EntitySpan> spans;
  std::size_t at = 0;
  for (auto& s : entity_surfaces) {
    spans.push_back({s, at, at + s.size(), std::string(kVaccineType)});
    at += s.size() + 1;
  }
  t.entities = std::move(spans);
  t.sentiment = SentimentLabel{polarity, polarity == Polarity::Positive   ? 0.5
                                         : polarity == Polarity::Negative ? -0.5
                                                                          : 0.0};
  return t;
}

TopicAssignment assignment(std::string doc_id, std::optional<std::string> primary,
                           std::optional<std::string> secondary) {
  TopicAssignment a;
  a.doc_id = std::move(doc_id);
  a.primary = std::move(primary);
  a.secondary = std::move(secondary);
  a.primary_prob = a.primary ? 0.9 : 0.0;
  a.secondary_prob = a.secondary ? 0.5 : 0.0;
  return a;
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "amir-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n, bool allow_zeros) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  double sum = 0.0;
  for (auto& x : v) {
    x = (allow_zeros && u(rng) < 0.2) ? 0.0 : u(rng);
    sum += x;
  }
  if (sum == 0.0) {
    v[0] = 1.0;
    sum = 1.0;
  }
  for (auto& x : v) x /= sum;
  return v;
}

}  // namespace amir::test
