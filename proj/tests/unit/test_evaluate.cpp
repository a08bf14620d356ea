#include <doctest.h>

#include <random>

#include "amir/error.hpp"
#include "amir/evaluate.hpp"
#include "fixtures.hpp"

using namespace amir;
using test::annotated;

namespace {

// Oracle written from the definition: walk every prefix explicitly.
double oracle_ap(const RelevanceVector& rel, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (i > rel.size() || !rel[i - 1]) continue;
    std::size_t hits = 0;
    for (std::size_t j = 0; j < i; ++j) hits += rel[j] ? 1 : 0;
    sum += static_cast<double>(hits) / static_cast<double>(i);
  }
  return sum / static_cast<double>(k);
}

double oracle_rr(const RelevanceVector& rel, std::size_t k) {
  std::size_t i = 0;
  while (i < k && i < rel.size() && !rel[i]) ++i;
  return i < k && i < rel.size() ? 1.0 / static_cast<double>(i + 1) : 0.0;
}

std::string first_word(std::string_view s) { return std::string(s.substr(0, s.find(' '))); }

}  // namespace

TEST_CASE("MAP@k uses the positional divisor") {
  const std::vector<RelevanceVector> one{{true, false, true}};
  // (1/1 + 2/3) / 3
  CHECK(map_at_k(one, 3) == doctest::Approx(5.0 / 9.0));
  // Textbook AP divides by the two hits instead.
  CHECK(conventional_map_at_k(one, 3) == doctest::Approx(5.0 / 6.0));
  // Shorter vectors are padded with misses.
  CHECK(map_at_k(one, 5) == doctest::Approx(5.0 / 15.0));
  const std::vector<RelevanceVector> none{{false, false}};
  CHECK(map_at_k(none, 2) == 0.0);
  CHECK(conventional_map_at_k(none, 2) == 0.0);
}

TEST_CASE("MRR@k averages reciprocal first-hit ranks") {
  const std::vector<RelevanceVector> rels{{true, false}, {false, false, false, true}};
  CHECK(mrr_at_k(rels, 5) == doctest::Approx(0.625));
  CHECK(mrr_at_k(rels, 3) == doctest::Approx(0.5));
}

TEST_CASE("P@k and range errors") {
  const RelevanceVector rel{true, false, true, false, false};
  CHECK(precision_at_k(rel, 5) == doctest::Approx(0.4));
  CHECK(precision_at_k(rel, 1) == 1.0);
  CHECK_THROWS_AS(precision_at_k(rel, 0), KOutOfRange);
  CHECK_THROWS_AS(precision_at_k(rel, 6), KOutOfRange);
  const std::vector<RelevanceVector> empty;
  CHECK_THROWS_AS(map_at_k(empty, 3), EmptyQuerySet);
  CHECK_THROWS_AS(mrr_at_k(empty, 3), EmptyQuerySet);
  const std::vector<RelevanceVector> one{{true}};
  CHECK_THROWS_AS(map_at_k(one, 0), KOutOfRange);
}

TEST_CASE("property: metrics agree with the brute-force oracle and stay in [0, 1]") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> nq(1, 8);
  std::uniform_int_distribution<std::size_t> len(0, 25);
  std::uniform_int_distribution<std::size_t> kk(1, 20);
  std::bernoulli_distribution coin(0.3);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<RelevanceVector> rels(nq(rng));
    for (auto& r : rels) {
      r.resize(len(rng));
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = coin(rng);
    }
    const std::size_t k = kk(rng);
    double map = 0.0;
    double mrr = 0.0;
    for (const auto& r : rels) {
      map += oracle_ap(r, k);
      mrr += oracle_rr(r, k);
    }
    map /= static_cast<double>(rels.size());
    mrr /= static_cast<double>(rels.size());
    CHECK(map_at_k(rels, k) == doctest::Approx(map).epsilon(1e-12));
    CHECK(mrr_at_k(rels, k) == doctest::Approx(mrr).epsilon(1e-12));
    CHECK(map_at_k(rels, k) <= mrr_at_k(rels, k) + 1e-12);
    CHECK(conventional_map_at_k(rels, k) >= map_at_k(rels, k) - 1e-12);
    CHECK(conventional_map_at_k(rels, k) <= 1.0);
  }
}

TEST_CASE("judges apply the strict criteria and the mapped topic") {
  const auto mis = annotated("m", "q", true, "T", {"pfizer"}, Polarity::Negative);
  const std::vector<AnnotatedTweet> recs{annotated("a", "a", false, "T", {"pfizer"}, Polarity::Negative),
                                         annotated("b", "b", false, "U", {"pfizer"}, Polarity::Negative)};
  CHECK(judge_sm(mis, recs, MatchCriteria::strict_default()) == RelevanceVector{true, false});

  const std::vector<MappingResult> maps{{"T", "F", MappingMethod::Distance, 0.1, {}, "F"}};
  const auto fa = test::assignment("x", "F");
  const auto ga = test::assignment("y", "G");
  const std::vector<JudgedArticle> arts{{&fa, 0.7}, {&fa, 0.5}, {&ga, 0.9}, {nullptr, 0.9}};
  CHECK(judge_fc(mis, arts, maps, 0.62) == RelevanceVector{true, false, false, false});
}

TEST_CASE("run_evaluation on a planted corpus ranks the relevant candidate first") {
  std::vector<AnnotatedTweet> tweets;
  const std::vector<std::string> themes{"alpha", "beta", "gamma"};
  for (const auto& t : themes) {
    tweets.push_back(annotated("m-" + t, t + " claim", true, t, {"pfizer"}, Polarity::Negative));
    tweets.push_back(annotated("c-" + t, t + " rebuttal", false, t, {"pfizer"}, Polarity::Negative));
    tweets.push_back(annotated("n-" + t, "noise " + t, false, "other", {"x"}, Polarity::Positive));
  }
  const test::FunctionScorer scorer([](std::string_view a, std::string_view b) {
    return first_word(a) == first_word(b) ? 0.9 : 0.1;
  });

  std::vector<FactArticle> articles;
  std::vector<TopicAssignment> assign;
  std::vector<MappingResult> maps;
  for (const auto& t : themes) {
    articles.push_back({"a-" + t, t + " fact check", "", "", std::nullopt});
    assign.push_back(test::assignment("a-" + t, "F-" + t));
    maps.push_back({t, "F-" + t, MappingMethod::Distance, 0.1, {}, "F-" + t});
  }

  EvalInputs in{tweets, {articles, assign}, maps, &scorer};
  EvalConfig cfg;
  cfg.cutoffs = {1, 3};
  const auto sm = run_evaluation(Approach::SocialMedia, in, cfg);
  CHECK(sm.queries == 3);
  CHECK(sm.mrr.at(1) == 1.0);
  CHECK(sm.map.at(3) == doctest::Approx(1.0 / 3.0));
  const auto fc = run_evaluation(Approach::FactCheck, in, cfg);
  CHECK(fc.mrr.at(3) == 1.0);
  CHECK(fc.map.at(1) == 1.0);

  cfg.max_queries = 1;
  CHECK(run_evaluation(Approach::SocialMedia, in, cfg).queries == 1);
  in.scorer = nullptr;
  CHECK_THROWS_AS(run_evaluation(Approach::SocialMedia, in, cfg), InvalidArgument);
}

TEST_CASE("report table aligns MRR then MAP columns") {
  EvalReport a;
  a.approach = Approach::SocialMedia;
  a.cutoffs = {3, 5};
  a.mrr = {{3, 0.5}, {5, 0.625}};
  a.map = {{3, 0.25}, {5, 1.0}};
  EvalReport b = a;
  b.approach = Approach::FactCheck;
  b.cutoffs = {3};
  b.mrr = {{3, 1.0}};
  b.map = {{3, 0.0}};
  const std::vector<EvalReport> reports{a, b};
  CHECK(render_report_table(reports) ==
        "Approach  MRR@3  MRR@5  MAP@3  MAP@5\n"
        "AMIR_SM   0.500  0.625  0.250  1.000\n"
        "AMIR_FC   1.000      -  0.000      -\n");
}
