#include "amir/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "amir/error.hpp"

namespace amir {
namespace {

// mt19937_64 is fully specified by the standard; the mapping to [0, 1) is
// done by hand because std::uniform_real_distribution is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return std::min(i, n - 1);
  }

 private:
  std::mt19937_64 gen_;
};

struct EncodedCorpus {
  std::vector<std::string> vocab;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> docs;
  std::size_t tokens = 0;
};

EncodedCorpus encode(std::span<const TokenStream> docs) {
  EncodedCorpus c;
  c.docs.reserve(docs.size());
  for (const auto& d : docs) {
    std::vector<std::size_t> ids;
    ids.reserve(d.tokens.size());
    for (const auto& tok : d.tokens) {
      auto [it, inserted] = c.index.emplace(tok, c.vocab.size());
      if (inserted) c.vocab.push_back(tok);
      ids.push_back(it->second);
    }
    c.tokens += ids.size();
    c.docs.push_back(std::move(ids));
  }
  return c;
}

void normalize_row(std::span<double> row) {
  const double s = std::accumulate(row.begin(), row.end(), 0.0);
  for (double& v : row) v /= s;
}

std::vector<std::string> ids_of(std::span<const TokenStream> docs) {
  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const auto& d : docs) ids.push_back(d.source_id);
  return ids;
}

// The K = 1 model: phi is the smoothed corpus unigram, theta is all ones.
TopicModel fit_single_topic(std::span<const TokenStream> docs, double beta) {
  EncodedCorpus c = encode(docs);
  if (c.tokens == 0) throw EmptyVocabulary();
  TopicModel m;
  m.num_topics = 1;
  m.vocab = c.vocab;
  m.phi = RowMatrix(1, c.vocab.size(), beta);
  for (const auto& d : c.docs) {
    for (auto w : d) m.phi(0, w) += 1.0;
  }
  normalize_row(m.phi.row(0));
  m.theta = RowMatrix(docs.size(), 1, 1.0);
  m.doc_ids = ids_of(docs);
  m.beta = beta;
  return m;
}

std::vector<std::vector<std::size_t>> word_document_lists(const TopicModel& model,
                                                          std::span<const TokenStream> docs) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(model.vocab.size());
  for (std::size_t i = 0; i < model.vocab.size(); ++i) index.emplace(model.vocab[i], i);
  std::vector<std::vector<std::size_t>> lists(model.vocab.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& tok : docs[d].tokens) {
      auto it = index.find(tok);
      if (it == index.end()) continue;
      auto& l = lists[it->second];
      if (l.empty() || l.back() != d) l.push_back(d);
    }
  }
  return lists;
}

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<std::string> join_tokens(const TokenStream& s) { return s.tokens; }

bool contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

// ---- TopicModel -------------------------------------------------------------

std::vector<std::size_t> TopicModel::top_words(std::size_t topic, std::size_t m) const {
  std::vector<std::size_t> idx(vocab.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto row = phi.row(topic);
  m = std::min(m, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return row[a] != row[b] ? row[a] > row[b] : a < b;
                    });
  idx.resize(m);
  return idx;
}

std::optional<std::size_t> TopicModel::word_index(const std::string& word) const {
  auto it = std::find(vocab.begin(), vocab.end(), word);
  if (it == vocab.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vocab.begin());
}

// ---- fitting ----------------------------------------------------------------

TopicModel fit_lda(std::span<const TokenStream> docs, const LdaParams& params) {
  const std::size_t K = params.num_topics;
  if (K < 2) throw InvalidK(static_cast<long>(K));
  if (docs.empty()) throw InvalidArgument("fit_lda: no documents");
  if (params.iterations == 0) throw InvalidArgument("fit_lda: iterations must be >= 1");
  if (params.beta <= 0.0) throw InvalidArgument("fit_lda: beta must be positive");
  const double alpha = params.alpha_for(K);
  if (alpha <= 0.0) throw InvalidArgument("fit_lda: alpha must be positive");
  const double beta = params.beta;

  EncodedCorpus c = encode(docs);
  if (c.tokens == 0) throw EmptyVocabulary();
  const std::size_t V = c.vocab.size();
  const std::size_t N = c.docs.size();
  const double vbeta = static_cast<double>(V) * beta;

  std::vector<std::size_t> n_dk(N * K, 0);
  std::vector<std::size_t> n_kw(K * V, 0);
  std::vector<std::size_t> n_k(K, 0);
  std::vector<std::vector<std::size_t>> z(N);

  Rng rng(params.seed);
  for (std::size_t d = 0; d < N; ++d) {
    z[d].resize(c.docs[d].size());
    for (std::size_t i = 0; i < c.docs[d].size(); ++i) {
      const std::size_t k = rng.index(K);
      const std::size_t w = c.docs[d][i];
      z[d][i] = k;
      ++n_dk[d * K + k];
      ++n_kw[k * V + w];
      ++n_k[k];
    }
  }

  std::vector<double> cum(K);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    for (std::size_t d = 0; d < N; ++d) {
      const auto& words = c.docs[d];
      for (std::size_t i = 0; i < words.size(); ++i) {
        const std::size_t w = words[i];
        std::size_t k = z[d][i];
        --n_dk[d * K + k];
        --n_kw[k * V + w];
        --n_k[k];

        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (static_cast<double>(n_dk[d * K + t]) + alpha) *
                   (static_cast<double>(n_kw[t * V + w]) + beta) /
                   (static_cast<double>(n_k[t]) + vbeta);
          cum[t] = total;
        }
        const double u = rng.uniform() * total;
        k = K - 1;
        for (std::size_t t = 0; t < K; ++t) {
          if (u < cum[t]) {
            k = t;
            break;
          }
        }

        z[d][i] = k;
        ++n_dk[d * K + k];
        ++n_kw[k * V + w];
        ++n_k[k];
      }
    }
  }

  TopicModel m;
  m.num_topics = K;
  m.vocab = std::move(c.vocab);
  m.phi = RowMatrix(K, V);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < V; ++w) {
      m.phi(k, w) = (static_cast<double>(n_kw[k * V + w]) + beta) /
                    (static_cast<double>(n_k[k]) + vbeta);
    }
    normalize_row(m.phi.row(k));
  }
  m.theta = RowMatrix(N, K);
  for (std::size_t d = 0; d < N; ++d) {
    const double len = static_cast<double>(c.docs[d].size());
    for (std::size_t k = 0; k < K; ++k) {
      m.theta(d, k) = (static_cast<double>(n_dk[d * K + k]) + alpha) /
                      (len + static_cast<double>(K) * alpha);
    }
    normalize_row(m.theta.row(d));
  }
  m.doc_ids = ids_of(docs);
  m.alpha = alpha;
  m.beta = beta;
  m.seed = params.seed;
  m.iterations = params.iterations;
  return m;
}

double coherence(const TopicModel& model, std::span<const TokenStream> docs, std::size_t top_m) {
  if (top_m < 2) throw InvalidArgument("coherence: top_m must be >= 2");
  if (model.num_topics == 0) return 0.0;
  const auto lists = word_document_lists(model, docs);
  double sum = 0.0;
  for (std::size_t k = 0; k < model.num_topics; ++k) {
    const auto top = model.top_words(k, top_m);
    double topic_sum = 0.0;
    for (std::size_t i = 1; i < top.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto co = static_cast<double>(intersection_size(lists[top[i]], lists[top[j]]));
        const auto dj = static_cast<double>(lists[top[j]].size());
        topic_sum += std::log((co + 1.0) / (dj + 1.0));
      }
    }
    sum += topic_sum;
  }
  return sum / static_cast<double>(model.num_topics);
}

KSelection select_k(std::span<const TokenStream> docs, std::size_t k_min, std::size_t k_max,
                    const LdaParams& params, std::size_t top_m) {
  if (k_min > k_max) throw InvalidArgument("select_k: empty K range");
  KSelection best;
  bool have = false;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    LdaParams p = params;
    p.num_topics = k;
    TopicModel m = fit_lda(docs, p);
    m.coherence = coherence(m, docs, top_m);
    best.sweep.push_back({k, m.coherence});
    if (!have || m.coherence > best.model.coherence) {
      best.k = k;
      best.model = std::move(m);
      have = true;
    }
  }
  return best;
}

std::vector<double> infer_theta(const TopicModel& model, const TokenStream& doc,
                                std::size_t iterations) {
  const std::size_t K = model.num_topics;
  std::vector<double> theta(K, 1.0 / static_cast<double>(K));
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(model.vocab.size());
  for (std::size_t i = 0; i < model.vocab.size(); ++i) index.emplace(model.vocab[i], i);

  std::map<std::size_t, double> counts;
  for (const auto& tok : doc.tokens) {
    if (auto it = index.find(tok); it != index.end()) counts[it->second] += 1.0;
  }
  if (counts.empty()) return theta;

  std::vector<double> next(K);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), model.alpha);
    for (const auto& [w, c] : counts) {
      double denom = 0.0;
      for (std::size_t k = 0; k < K; ++k) denom += theta[k] * model.phi(k, w);
      if (denom <= 0.0) continue;
      for (std::size_t k = 0; k < K; ++k) next[k] += c * theta[k] * model.phi(k, w) / denom;
    }
    normalize_row(next);
    theta.swap(next);
  }
  return theta;
}

// ---- labels and assignment --------------------------------------------------

TopicLabelTable::TopicLabelTable(std::vector<std::string> labels,
                                 std::map<std::string, std::vector<std::string>> synonyms)
    : labels_(std::move(labels)), synonyms_(std::move(synonyms)) {}

TopicLabelTable TopicLabelTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open label table " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid("label table " + path.string() + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_object()) {
    throw ConfigInvalid("label table " + path.string() + ": missing \"labels\" object");
  }
  std::map<std::size_t, std::string> by_index;
  for (const auto& [key, value] : j["labels"].items()) {
    std::size_t pos = 0;
    unsigned long idx = 0;
    try {
      idx = std::stoul(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || !value.is_string()) {
      throw ConfigInvalid("label table " + path.string() + ": bad entry \"" + key + "\"");
    }
    by_index[idx] = value.get<std::string>();
  }
  std::vector<std::string> labels;
  if (!by_index.empty()) labels.resize(by_index.rbegin()->first + 1);
  for (auto& [i, l] : by_index) labels[i] = std::move(l);

  std::map<std::string, std::vector<std::string>> synonyms;
  if (j.contains("synonyms")) {
    for (const auto& [label, list] : j["synonyms"].items()) {
      synonyms[label] = list.get<std::vector<std::string>>();
    }
  }
  return TopicLabelTable(std::move(labels), std::move(synonyms));
}

std::optional<std::size_t> TopicLabelTable::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void TopicLabelTable::validate_for(std::size_t k) const {
  if (labels_.size() != k) {
    throw ConfigInvalid("label table covers " + std::to_string(labels_.size()) +
                        " topics, model has " + std::to_string(k));
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ConfigInvalid("topic " + std::to_string(i) + " is unlabeled");
    if (labels_[i] == kUnknownTopic) throw ConfigInvalid("\"Unknown\" is reserved");
    if (!seen.insert(labels_[i]).second) throw ConfigInvalid("duplicate label " + labels_[i]);
  }
  for (const auto& [label, syns] : synonyms_) {
    if (!seen.count(label)) throw ConfigInvalid("synonyms for unknown label " + label);
  }
}

AssignThresholds AssignThresholds::defaults_for(std::size_t k) {
  const double t = 1.5 / static_cast<double>(k);
  return {t, t};
}

TopicAssignment assign_row(std::span<const double> theta_row, const TopicLabelTable& labels,
                           const AssignThresholds& th, std::string doc_id) {
  if (!(th.tau_secondary > 0.0 && th.tau_secondary <= th.tau_primary && th.tau_primary < 1.0)) {
    throw InvalidArgument("assign: thresholds must satisfy 0 < tau_secondary <= tau_primary < 1");
  }
  TopicAssignment a;
  a.doc_id = std::move(doc_id);
  if (theta_row.empty()) return a;

  std::vector<std::size_t> order(theta_row.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return theta_row[x] > theta_row[y]; });

  a.primary_prob = theta_row[order[0]];
  if (order.size() > 1) a.secondary_prob = theta_row[order[1]];
  if (a.primary_prob >= th.tau_primary) {
    a.primary = labels.label(order[0]);
    if (order.size() > 1 && a.secondary_prob >= th.tau_secondary) {
      a.secondary = labels.label(order[1]);
    }
  }
  return a;
}

TopicAssignment assign(const TopicModel& model, const TopicLabelTable& labels,
                       const AssignThresholds& thresholds, const TokenStream& doc) {
  const auto theta = infer_theta(model, doc);
  return assign_row(theta, labels, thresholds, doc.source_id);
}

std::vector<TopicAssignment> assign_training_docs(const TopicModel& model,
                                                  const TopicLabelTable& labels,
                                                  const AssignThresholds& thresholds) {
  std::vector<TopicAssignment> out;
  out.reserve(model.theta.rows());
  for (std::size_t d = 0; d < model.theta.rows(); ++d) {
    out.push_back(assign_row(model.theta.row(d), labels, thresholds,
                             d < model.doc_ids.size() ? model.doc_ids[d] : std::to_string(d)));
  }
  return out;
}

std::vector<TopicAssignment> synonym_backfill(
    std::span<const std::pair<std::string, TokenStream>> unassigned,
    const TopicLabelTable& labels, const Normalizer& normalizer) {
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> patterns;
  for (const auto& label : labels.labels()) {
    auto it = labels.synonyms().find(label);
    if (it == labels.synonyms().end()) continue;
    std::vector<std::vector<std::string>> runs;
    for (const auto& syn : it->second) {
      auto run = join_tokens(normalizer(tokenize(syn)));
      if (!run.empty()) runs.push_back(std::move(run));
    }
    if (!runs.empty()) patterns.emplace_back(label, std::move(runs));
  }

  std::vector<TopicAssignment> out;
  out.reserve(unassigned.size());
  for (const auto& [doc_id, tokens] : unassigned) {
    TopicAssignment a;
    a.doc_id = doc_id;
    const std::string* hit = nullptr;
    std::size_t hits = 0;
    for (const auto& [label, runs] : patterns) {
      const bool any = std::any_of(runs.begin(), runs.end(),
                                   [&](const auto& run) { return contains_run(tokens.tokens, run); });
      if (any) {
        ++hits;
        hit = &label;
      }
    }
    if (hits == 1) a.primary = *hit;
    out.push_back(std::move(a));
  }
  return out;
}

// ---- sub-topics ---------------------------------------------------------------

std::vector<SubTopic> extract_subtopics(std::span<const TokenStream> docs,
                                        std::span<const TopicAssignment> assignments,
                                        const std::string& topic, const SubtopicOptions& options) {
  if (docs.size() != assignments.size()) {
    throw InvalidArgument("extract_subtopics: documents and assignments differ in length");
  }
  std::vector<TokenStream> subset;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (assignments[i].primary == topic) subset.push_back(docs[i]);
  }
  if (subset.size() < options.min_docs || subset.size() < 2 || options.max_sub < 2) return {};

  TopicModel best;
  try {
    best = fit_single_topic(subset, options.lda.beta);
  } catch (const EmptyVocabulary&) {
    return {};
  }
  best.coherence = coherence(best, subset, options.top_m);
  for (std::size_t k = 2; k <= options.max_sub; ++k) {
    LdaParams p = options.lda;
    p.num_topics = k;
    TopicModel m = fit_lda(subset, p);
    m.coherence = coherence(m, subset, options.top_m);
    if (m.coherence > best.coherence) best = std::move(m);
  }
  if (best.num_topics < 2) return {};

  std::vector<std::size_t> argmax_count(best.num_topics, 0);
  for (std::size_t d = 0; d < best.theta.rows(); ++d) {
    const auto row = best.theta.row(d);
    ++argmax_count[static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin())];
  }

  std::vector<SubTopic> out;
  for (std::size_t k = 0; k < best.num_topics; ++k) {
    if (argmax_count[k] == 0) continue;
    SubTopic s;
    for (auto w : best.top_words(k, options.keywords)) s.keywords.push_back(best.vocab[w]);
    for (std::size_t i = 0; i < s.keywords.size(); ++i) {
      if (i) s.label += " / ";
      s.label += s.keywords[i];
    }
    s.doc_count = argmax_count[k];
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SubTopic& a, const SubTopic& b) { return a.doc_count > b.doc_count; });
  return out;
}

// ---- co-occurrence ------------------------------------------------------------

void CooccurrenceGraph::add_node(const std::string& label) { degree_.try_emplace(label, 0); }

void CooccurrenceGraph::add_pair(const std::string& a, const std::string& b, std::size_t weight) {
  if (a == b || weight == 0) return;
  add_node(a);
  add_node(b);
  Edge e = a < b ? Edge{a, b} : Edge{b, a};
  auto [it, inserted] = edges_.try_emplace(std::move(e), 0);
  it->second += weight;
  if (inserted) {
    ++degree_[a];
    ++degree_[b];
  }
}

std::size_t CooccurrenceGraph::degree(const std::string& label) const {
  auto it = degree_.find(label);
  return it == degree_.end() ? 0 : it->second;
}

std::size_t CooccurrenceGraph::weighted_degree(const std::string& label) const {
  std::size_t w = 0;
  for (const auto& [e, weight] : edges_) {
    if (e.first == label || e.second == label) w += weight;
  }
  return w;
}

std::size_t CooccurrenceGraph::weight(const std::string& a, const std::string& b) const {
  auto it = edges_.find(a < b ? Edge{a, b} : Edge{b, a});
  return it == edges_.end() ? 0 : it->second;
}

std::size_t CooccurrenceGraph::total_weight() const {
  std::size_t w = 0;
  for (const auto& [e, weight] : edges_) w += weight;
  return w;
}

std::optional<std::string> CooccurrenceGraph::strongest_neighbor(const std::string& label) const {
  std::optional<std::string> best;
  std::size_t best_w = 0;
  for (const auto& [e, weight] : edges_) {
    const std::string* other = nullptr;
    if (e.first == label) other = &e.second;
    else if (e.second == label) other = &e.first;
    if (!other) continue;
    if (weight > best_w || (weight == best_w && best && *other < *best)) {
      best = *other;
      best_w = weight;
    }
  }
  return best;
}

CooccurrenceGraph build_cooccurrence_graph(std::span<const TopicAssignment> assignments) {
  CooccurrenceGraph g;
  for (const auto& a : assignments) {
    if (a.primary) g.add_node(*a.primary);
    if (a.secondary) g.add_node(*a.secondary);
    if (a.primary && a.secondary) g.add_pair(*a.primary, *a.secondary);
  }
  return g;
}

}  // namespace amir
