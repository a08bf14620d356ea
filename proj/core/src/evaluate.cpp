#include "amir/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "amir/error.hpp"

namespace amir {
namespace {

bool rel_at(const RelevanceVector& rel, std::size_t i) { return i < rel.size() && rel[i]; }

template <typename PerQuery>
double mean_over(std::span<const RelevanceVector> rels, std::size_t k, PerQuery per_query) {
  if (rels.empty()) throw EmptyQuerySet();
  if (k == 0) throw KOutOfRange(0, 0);
  double sum = 0.0;
  for (const auto& r : rels) sum += per_query(r);
  return sum / static_cast<double>(rels.size());
}

}  // namespace

double precision_at_k(const RelevanceVector& rel, std::size_t k) {
  if (k < 1 || k > rel.size()) throw KOutOfRange(k, rel.size());
  const auto hits = std::count(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(k), true);
  return static_cast<double>(hits) / static_cast<double>(k);
}

double map_at_k(std::span<const RelevanceVector> rels, std::size_t k) {
  return mean_over(rels, k, [k](const RelevanceVector& r) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!rel_at(r, i)) continue;
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
    return sum / static_cast<double>(k);
  });
}

double conventional_map_at_k(std::span<const RelevanceVector> rels, std::size_t k) {
  return mean_over(rels, k, [k](const RelevanceVector& r) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!rel_at(r, i)) continue;
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
    return hits ? sum / static_cast<double>(hits) : 0.0;
  });
}

double mrr_at_k(std::span<const RelevanceVector> rels, std::size_t k) {
  return mean_over(rels, k, [k](const RelevanceVector& r) {
    for (std::size_t i = 0; i < k; ++i) {
      if (rel_at(r, i)) return 1.0 / static_cast<double>(i + 1);
    }
    return 0.0;
  });
}

RelevanceVector judge_sm(const AnnotatedTweet& mis, std::span<const AnnotatedTweet> recommended,
                         const MatchCriteria& strict) {
  RelevanceVector rel;
  rel.reserve(recommended.size());
  for (const auto& r : recommended) rel.push_back(criteria_match(mis, r, strict));
  return rel;
}

RelevanceVector judge_fc(const AnnotatedTweet& mis, std::span<const JudgedArticle> recommended,
                         std::span<const MappingResult> mappings, double threshold) {
  std::optional<std::string> target;
  if (mis.topic && mis.topic->primary) target = mapped_topic(*mis.topic->primary, mappings);
  RelevanceVector rel;
  rel.reserve(recommended.size());
  for (const auto& r : recommended) {
    rel.push_back(target && r.assignment && r.assignment->primary == target && r.score >= threshold);
  }
  return rel;
}

const char* to_string(Approach a) noexcept {
  return a == Approach::SocialMedia ? "AMIR_SM" : "AMIR_FC";
}

EvalReport run_evaluation(Approach approach, const EvalInputs& inputs, const EvalConfig& config) {
  if (!inputs.scorer) throw InvalidArgument("run_evaluation: no scorer");
  if (config.cutoffs.empty()) throw InvalidArgument("run_evaluation: no cutoffs");
  const std::size_t depth = *std::max_element(config.cutoffs.begin(), config.cutoffs.end());

  std::vector<const AnnotatedTweet*> queries;
  std::vector<RankCandidate> pool;
  std::unordered_map<std::string_view, const AnnotatedTweet*> tweet_by_id;
  for (const auto& t : inputs.tweets) {
    if (t.tweet.misleading) {
      if (t.topic && t.topic->primary) queries.push_back(&t);
    } else {
      pool.push_back({t.tweet.id, t.tweet.text});
      tweet_by_id.emplace(t.tweet.id, &t);
    }
  }
  if (config.max_queries > 0 && queries.size() > config.max_queries) {
    queries.resize(config.max_queries);
  }

  std::vector<RankCandidate> articles;
  std::unordered_map<std::string_view, const TopicAssignment*> article_topic;
  if (approach == Approach::FactCheck) {
    const auto& idx = inputs.articles;
    for (std::size_t i = 0; i < idx.articles.size(); ++i) {
      articles.push_back({idx.articles[i].id, idx.articles[i].title});
      article_topic.emplace(idx.articles[i].id, i < idx.assignments.size() ? &idx.assignments[i] : nullptr);
    }
  }

  std::vector<RelevanceVector> rels;
  rels.reserve(queries.size());
  for (const AnnotatedTweet* q : queries) {
    if (approach == Approach::SocialMedia) {
      const auto ranked = rank_candidates(q->tweet.text, pool, *inputs.scorer, depth);
      std::vector<AnnotatedTweet> recs;
      recs.reserve(ranked.size());
      for (const auto& item : ranked) recs.push_back(*tweet_by_id.at(item.id));
      rels.push_back(judge_sm(*q, recs, config.strict));
    } else {
      const auto ranked = rank_candidates(q->tweet.text, articles, *inputs.scorer, depth);
      std::vector<JudgedArticle> judged;
      judged.reserve(ranked.size());
      for (const auto& item : ranked) judged.push_back({article_topic.at(item.id), item.score});
      rels.push_back(judge_fc(*q, judged, inputs.mappings, config.threshold));
    }
  }

  EvalReport report;
  report.approach = approach;
  report.cutoffs = config.cutoffs;
  report.queries = rels.size();
  report.conventional_ap = config.conventional_ap;
  for (std::size_t k : config.cutoffs) {
    report.mrr[k] = mrr_at_k(rels, k);
    report.map[k] = config.conventional_ap ? conventional_map_at_k(rels, k) : map_at_k(rels, k);
  }
  return report;
}

std::string render_report_table(std::span<const EvalReport> reports) {
  std::vector<std::size_t> cutoffs;
  for (const auto& r : reports) {
    for (auto k : r.cutoffs) {
      if (std::find(cutoffs.begin(), cutoffs.end(), k) == cutoffs.end()) cutoffs.push_back(k);
    }
  }
  std::sort(cutoffs.begin(), cutoffs.end());

  std::vector<std::string> header{"Approach"};
  for (auto k : cutoffs) header.push_back("MRR@" + std::to_string(k));
  for (auto k : cutoffs) header.push_back("MAP@" + std::to_string(k));

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    std::vector<std::string> row{to_string(r.approach)};
    auto cell = [](const std::map<std::size_t, double>& m, std::size_t k) -> std::string {
      auto it = m.find(k);
      if (it == m.end()) return "-";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", it->second);
      return buf;
    };
    for (auto k : cutoffs) row.push_back(cell(r.mrr, k));
    for (auto k : cutoffs) row.push_back(cell(r.map, k));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      const std::size_t pad = width[c] - row[c].size();
      if (c == 0) out += row[c] + std::string(pad, ' ');
      else out += std::string(pad, ' ') + row[c];
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

}  // namespace amir
