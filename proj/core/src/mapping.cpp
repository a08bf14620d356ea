#include "amir/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/Dense>

#include "amir/error.hpp"

namespace amir {
namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw NotADistribution("negative or NaN probability");
    s += v;
  }
  if (std::abs(s - 1.0) > kSumTolerance) {
    throw NotADistribution("probabilities sum to " + std::to_string(s));
  }
}

double kl_term(double x, double m) { return x > 0.0 ? x * std::log2(x / m) : 0.0; }

const TopicSignature* find_signature(std::span<const TopicSignature> sigs,
                                     const std::string& label) {
  for (const auto& s : sigs) {
    if (s.topic_label == label) return &s;
  }
  return nullptr;
}

std::map<std::string, double> bag_of(const TopicSignature& sig) {
  std::map<std::string, double> bag;
  for (const auto& kw : sig.keywords) bag[kw.word] += kw.weight;
  return bag;
}

}  // namespace

const char* to_string(MappingMethod m) noexcept {
  switch (m) {
    case MappingMethod::Distance: return "distance";
    case MappingMethod::Naive: return "naive";
    case MappingMethod::Tfidf: return "tfidf";
  }
  return "distance";
}

MappingMethod mapping_method_from_string(const std::string& s) {
  if (s == "distance") return MappingMethod::Distance;
  if (s == "naive") return MappingMethod::Naive;
  if (s == "tfidf") return MappingMethod::Tfidf;
  throw InvalidArgument("unknown mapping method: " + s);
}

double js_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionMismatch(p.size(), q.size());
  check_distribution(p);
  check_distribution(q);
  // Each term is symmetric in (p_i, q_i), so the sum is symmetric exactly.
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (m <= 0.0) continue;
    sum += 0.5 * (kl_term(p[i], m) + kl_term(q[i], m));
  }
  return std::clamp(sum, 0.0, 1.0);
}

TopicProjection project_topics(std::span<const std::vector<double>> rows) {
  const std::size_t n = rows.size();
  if (n < 2) throw InvalidArgument("project_topics: need at least two topics");

  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n));
  double max_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = js_divergence(rows[i], rows[j]);
      max_d = std::max(max_d, d);
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      d2(a, b) = d2(b, a) = d * d;
    }
  }
  if (max_d == 0.0) throw DegenerateMatrix();

  const auto N = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(N, N) - Eigen::MatrixXd::Constant(N, N, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw DegenerateMatrix();

  TopicProjection proj;
  proj.coords.assign(n, {0.0, 0.0});
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::Index col = N - 1 - axis;
    if (col < 0) break;
    const double lambda = solver.eigenvalues()(col);
    proj.eigenvalues[static_cast<std::size_t>(axis)] = lambda;
    const double scale = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    Eigen::VectorXd v = solver.eigenvectors().col(col) * scale;
    Eigen::Index big = 0;
    for (Eigen::Index i = 1; i < N; ++i) {
      if (std::abs(v(i)) > std::abs(v(big))) big = i;
    }
    if (v(big) < 0.0) v = -v;
    for (std::size_t i = 0; i < n; ++i) {
      proj.coords[i][static_cast<std::size_t>(axis)] = v(static_cast<Eigen::Index>(i));
    }
  }
  return proj;
}

std::vector<std::vector<double>> merged_topic_rows(const TopicModel& a, const TopicModel& b,
                                                   double epsilon) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::size_t> a_cols(a.vocab.size());
  std::vector<std::size_t> b_cols(b.vocab.size());
  for (std::size_t w = 0; w < a.vocab.size(); ++w) {
    a_cols[w] = index.emplace(a.vocab[w], index.size()).first->second;
  }
  for (std::size_t w = 0; w < b.vocab.size(); ++w) {
    b_cols[w] = index.emplace(b.vocab[w], index.size()).first->second;
  }
  const std::size_t V = index.size();

  std::vector<std::vector<double>> rows;
  rows.reserve(a.num_topics + b.num_topics);
  auto add_rows = [&](const TopicModel& m, const std::vector<std::size_t>& cols) {
    for (std::size_t k = 0; k < m.num_topics; ++k) {
      std::vector<double> row(V, epsilon);
      for (std::size_t w = 0; w < cols.size(); ++w) row[cols[w]] += m.phi(k, w);
      const double s = std::accumulate(row.begin(), row.end(), 0.0);
      for (double& v : row) v /= s;
      rows.push_back(std::move(row));
    }
  };
  add_rows(a, a_cols);
  add_rows(b, b_cols);
  return rows;
}

DistanceMapping map_by_distance(const TopicModel& mis_model, const TopicLabelTable& mis_labels,
                                const TopicModel& fc_model, const TopicLabelTable& fc_labels,
                                const DistanceMappingOptions& options) {
  mis_labels.validate_for(mis_model.num_topics);
  fc_labels.validate_for(fc_model.num_topics);

  DistanceMapping out;
  const auto rows = merged_topic_rows(mis_model, fc_model);
  out.projection = project_topics(rows);

  const std::size_t n_mis = mis_model.num_topics;
  const std::size_t n_fc = fc_model.num_topics;
  auto dist = [&](std::size_t i, std::size_t j) {
    const auto& a = out.projection.coords[i];
    const auto& b = out.projection.coords[n_mis + j];
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };

  if (options.cutoff) {
    out.cutoff = *options.cutoff;
  } else {
    std::vector<double> all;
    all.reserve(n_mis * n_fc);
    for (std::size_t i = 0; i < n_mis; ++i) {
      for (std::size_t j = 0; j < n_fc; ++j) all.push_back(dist(i, j));
    }
    const double mean = std::accumulate(all.begin(), all.end(), 0.0) / static_cast<double>(all.size());
    double var = 0.0;
    for (double d : all) var += (d - mean) * (d - mean);
    var /= static_cast<double>(all.size());
    out.cutoff = mean + options.sd_multiplier * std::sqrt(var);
  }

  for (std::size_t i = 0; i < n_mis; ++i) {
    std::size_t best = 0;
    double best_d = dist(i, 0);
    for (std::size_t j = 1; j < n_fc; ++j) {
      const double d = dist(i, j);
      if (d < best_d) {
        best = j;
        best_d = d;
      }
    }
    MappingResult r;
    r.source_topic = mis_labels.label(i);
    r.method = MappingMethod::Distance;
    r.score = best_d;
    r.nearest = fc_labels.label(best);
    if (best_d <= out.cutoff) r.target_topic = r.nearest;
    out.mappings.push_back(std::move(r));
  }
  return out;
}

std::vector<TopicSignature> make_signatures(const TopicModel& model, const TopicLabelTable& labels,
                                            std::size_t size) {
  if (size == 0) throw InvalidArgument("signature size must be >= 1");
  labels.validate_for(model.num_topics);
  std::vector<TopicSignature> sigs;
  sigs.reserve(model.num_topics);
  for (std::size_t k = 0; k < model.num_topics; ++k) {
    TopicSignature s;
    s.topic_label = labels.label(k);
    for (auto w : model.top_words(k, size)) s.keywords.push_back({model.vocab[w], model.phi(k, w)});
    sigs.push_back(std::move(s));
  }
  return sigs;
}

TopicSignature normalize_signature(const TopicSignature& sig, const Normalizer& normalizer) {
  TopicSignature out;
  out.topic_label = sig.topic_label;
  std::unordered_map<std::string, std::size_t> pos;
  for (const auto& kw : sig.keywords) {
    std::string term = normalizer.term(kw.word);
    if (term.empty()) continue;
    auto [it, inserted] = pos.emplace(term, out.keywords.size());
    if (inserted) {
      out.keywords.push_back({std::move(term), kw.weight});
    } else {
      out.keywords[it->second].weight += kw.weight;
    }
  }
  std::stable_sort(out.keywords.begin(), out.keywords.end(),
                   [](const WeightedKeyword& a, const WeightedKeyword& b) { return a.weight > b.weight; });
  return out;
}

std::vector<MappingResult> map_by_keywords(std::span<const TopicSignature> mis_sigs,
                                           std::span<const TopicSignature> fc_sigs) {
  std::vector<std::map<std::string, double>> fc_bags;
  fc_bags.reserve(fc_sigs.size());
  for (const auto& s : fc_sigs) fc_bags.push_back(bag_of(s));

  std::vector<MappingResult> out;
  for (const auto& mis : mis_sigs) {
    MappingResult r;
    r.source_topic = mis.topic_label;
    r.method = MappingMethod::Naive;
    std::size_t best_count = 0;
    double best_weight = 0.0;
    for (std::size_t j = 0; j < fc_sigs.size(); ++j) {
      std::vector<std::string> matched;
      double weight = 0.0;
      for (const auto& kw : mis.keywords) {
        auto it = fc_bags[j].find(kw.word);
        if (it == fc_bags[j].end()) continue;
        if (std::find(matched.begin(), matched.end(), kw.word) != matched.end()) continue;
        matched.push_back(kw.word);
        weight += kw.weight + it->second;
      }
      const bool better = matched.size() > best_count ||
                          (matched.size() == best_count && best_count > 0 && weight > best_weight);
      if (better) {
        best_count = matched.size();
        best_weight = weight;
        r.target_topic = fc_sigs[j].topic_label;
        r.matched_keywords = std::move(matched);
      }
    }
    r.score = static_cast<double>(best_count);
    r.nearest = r.target_topic;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MappingResult> map_by_tfidf(std::span<const TopicSignature> mis_sigs,
                                        std::span<const TopicSignature> fc_sigs, bool weighted) {
  std::map<std::string, std::size_t> df;
  for (auto sigs : {mis_sigs, fc_sigs}) {
    for (const auto& s : sigs) {
      for (const auto& [word, w] : bag_of(s)) ++df[word];
    }
  }
  const double n_docs = static_cast<double>(mis_sigs.size() + fc_sigs.size());
  auto vectorize = [&](const TopicSignature& s) {
    auto bag = bag_of(s);
    for (auto& [word, w] : bag) {
      const double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[word]))) + 1.0;
      w = weighted ? w * idf : 1.0;
    }
    return bag;
  };
  auto norm = [](const std::map<std::string, double>& v) {
    double s = 0.0;
    for (const auto& [word, w] : v) s += w * w;
    return std::sqrt(s);
  };

  std::vector<std::map<std::string, double>> fc_vecs;
  std::vector<double> fc_norms;
  for (const auto& s : fc_sigs) {
    fc_vecs.push_back(vectorize(s));
    fc_norms.push_back(norm(fc_vecs.back()));
  }

  std::vector<MappingResult> out;
  for (const auto& mis : mis_sigs) {
    const auto v = vectorize(mis);
    const double nv = norm(v);
    MappingResult r;
    r.source_topic = mis.topic_label;
    r.method = MappingMethod::Tfidf;
    double best = 0.0;
    for (std::size_t j = 0; j < fc_vecs.size(); ++j) {
      if (nv == 0.0 || fc_norms[j] == 0.0) continue;
      double dot = 0.0;
      for (const auto& [word, w] : v) {
        if (auto it = fc_vecs[j].find(word); it != fc_vecs[j].end()) dot += w * it->second;
      }
      const double cos = dot / (nv * fc_norms[j]);
      if (cos > best) {
        best = cos;
        r.target_topic = fc_sigs[j].topic_label;
      }
    }
    r.score = best;
    r.nearest = r.target_topic;
    out.push_back(std::move(r));
  }
  return out;
}

double rank_k_quality(std::span<const MappingResult> mappings,
                      [[maybe_unused]] std::span<const TopicSignature> mis_sigs,
                      std::span<const TopicSignature> fc_sigs) {
  double total = 0.0;
  std::size_t counted = 0;
  for (const auto& m : mappings) {
    if (!m.target_topic || m.matched_keywords.empty()) continue;
    const TopicSignature* target = find_signature(fc_sigs, *m.target_topic);
    if (!target) continue;
    double sum = 0.0;
    std::size_t found = 0;
    for (const auto& word : m.matched_keywords) {
      for (std::size_t i = 0; i < target->keywords.size(); ++i) {
        if (target->keywords[i].word == word) {
          sum += static_cast<double>(i + 1);
          ++found;
          break;
        }
      }
    }
    if (found == 0) continue;
    total += sum / static_cast<double>(found);
    ++counted;
  }
  if (counted == 0) throw NoMatchedKeywords();
  return total / static_cast<double>(counted);
}

}  // namespace amir
