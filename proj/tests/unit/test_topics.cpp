#include <doctest.h>

#include <cmath>
#include <numeric>

#include "amir/error.hpp"
#include "amir/topics.hpp"
#include "fixtures.hpp"

using namespace amir;

namespace {

void check_row_stochastic(const RowMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    for (double x : row) CHECK(x > 0.0);
  }
}

std::vector<std::vector<double>> theta_rows(const TopicModel& m) {
  std::vector<std::vector<double>> out;
  for (std::size_t d = 0; d < m.theta.rows(); ++d) out.emplace_back(m.theta.row(d).begin(), m.theta.row(d).end());
  return out;
}

LdaParams params(std::size_t k, std::uint64_t seed = 5, std::size_t iters = 200) {
  LdaParams p;
  p.num_topics = k;
  p.iterations = iters;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("fit_lda yields row-stochastic phi and theta with the expected shapes") {
  const auto corpus = test::planted_corpus(60, 3, 8, 20, 1);
  const auto m = fit_lda(corpus.docs, params(3));
  CHECK(m.num_topics == 3);
  CHECK(m.phi.rows() == 3);
  CHECK(m.phi.cols() == m.vocab.size());
  CHECK(m.theta.rows() == 60);
  CHECK(m.doc_ids.front() == "d0");
  CHECK(m.alpha == doctest::Approx(50.0 / 3));
  check_row_stochastic(m.phi);
  check_row_stochastic(m.theta);
}

TEST_CASE("fit_lda is bit-identical under a fixed seed and differs across seeds") {
  const auto corpus = test::planted_corpus(40, 2, 6, 15, 2);
  const auto a = fit_lda(corpus.docs, params(2, 9));
  const auto b = fit_lda(corpus.docs, params(2, 9));
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);
  // Compared after one sweep: a converged fit of two disjoint topics can
  // coincide across seeds.
  CHECK_FALSE(fit_lda(corpus.docs, params(2, 9, 1)).phi == fit_lda(corpus.docs, params(2, 10, 1)).phi);
}

TEST_CASE("fit_lda rejects bad inputs") {
  const auto corpus = test::planted_corpus(10, 2, 4, 5, 3);
  CHECK_THROWS_AS(fit_lda(corpus.docs, params(1)), InvalidK);
  std::vector<TokenStream> empty_docs(3);
  CHECK_THROWS_AS(fit_lda(empty_docs, params(2)), EmptyVocabulary);
  CHECK_THROWS_AS(fit_lda({}, params(2)), InvalidArgument);
  auto zero = params(2);
  zero.iterations = 0;
  CHECK_THROWS_AS(fit_lda(corpus.docs, zero), InvalidArgument);
}

TEST_CASE("coherence is non-positive and rewards the planted structure") {
  const auto corpus = test::planted_corpus(90, 3, 8, 20, 4);
  const auto good = fit_lda(corpus.docs, params(3));
  const double c3 = coherence(good, corpus.docs, 5);
  CHECK(c3 <= 0.0);
  const auto sel = select_k(corpus.docs, 2, 5, params(2), 5);
  CHECK(sel.k == 3);
  CHECK(sel.sweep.size() == 4);
  CHECK(sel.model.num_topics == 3);
  for (const auto& e : sel.sweep) CHECK(e.coherence <= sel.sweep[1].coherence);
}

TEST_CASE("planted corpus topics are recovered with high argmax purity") {
  const auto corpus = test::planted_corpus(100, 3, 10, 25, 6);
  const auto m = fit_lda(corpus.docs, params(3));
  CHECK(test::argmax_purity(theta_rows(m), corpus.truth, 3) >= 0.9);
}

TEST_CASE("infer_theta favours the topic of the folded-in words") {
  const auto corpus = test::planted_corpus(60, 2, 6, 20, 7);
  const auto m = fit_lda(corpus.docs, params(2));
  const auto theta_t0 = infer_theta(m, corpus.docs[0]);
  const auto theta_t1 = infer_theta(m, corpus.docs[1]);
  const auto argmax = [](const std::vector<double>& v) { return v[0] >= v[1] ? 0 : 1; };
  CHECK(argmax(theta_t0) != argmax(theta_t1));
  CHECK(std::accumulate(theta_t0.begin(), theta_t0.end(), 0.0) == doctest::Approx(1.0));

  const auto oov = infer_theta(m, TokenStream{{"nothing", "known"}, "x"});
  CHECK(oov == std::vector<double>{0.5, 0.5});
}

TEST_CASE("assign_row applies thresholds with lower-index tie-break") {
  const TopicLabelTable labels({"Efficacy", "Choices", "Shots"});
  const AssignThresholds t{0.5, 0.15};
  const std::vector<double> row{0.7, 0.2, 0.1};
  const auto a = assign_row(row, labels, t, "d");
  CHECK(a.primary == std::optional<std::string>("Efficacy"));
  CHECK(a.secondary == std::optional<std::string>("Choices"));
  CHECK(a.primary_prob == doctest::Approx(0.7));

  const auto d = assign_row(row, labels, AssignThresholds::defaults_for(3), "d");
  CHECK(d.primary == std::optional<std::string>("Efficacy"));
  CHECK_FALSE(d.secondary.has_value());

  const std::vector<double> flat{0.2, 0.4, 0.4};
  const auto tie = assign_row(flat, labels, AssignThresholds{0.3, 0.3}, "t");
  CHECK(tie.primary == std::optional<std::string>("Choices"));
  CHECK(tie.secondary == std::optional<std::string>("Shots"));

  const std::vector<double> low{0.34, 0.33, 0.33};
  CHECK_FALSE(assign_row(low, labels, AssignThresholds::defaults_for(3), "u").known());
  CHECK_THROWS_AS(assign_row(row, labels, AssignThresholds{0.2, 0.5}, "x"), InvalidArgument);
}

TEST_CASE("label tables validate against the model size") {
  CHECK_NOTHROW(TopicLabelTable({"a", "b"}).validate_for(2));
  CHECK_THROWS_AS(TopicLabelTable({"a", "b"}).validate_for(3), ConfigInvalid);
  CHECK_THROWS_AS(TopicLabelTable({"a", "a"}).validate_for(2), ConfigInvalid);
  CHECK_THROWS_AS(TopicLabelTable({"a", "Unknown"}).validate_for(2), ConfigInvalid);
  CHECK_THROWS_AS(TopicLabelTable({"a", ""}).validate_for(2), ConfigInvalid);
  CHECK_THROWS_AS(TopicLabelTable({"a", "b"}, {{"c", {"x"}}}).validate_for(2), ConfigInvalid);

  test::TempDir dir;
  test::write_file(dir.path() / "l.json", R"({"labels":{"1":"Beta","0":"Alpha"},"synonyms":{"Beta":["b one"]}})");
  const auto loaded = TopicLabelTable::load(dir.path() / "l.json");
  CHECK(loaded.labels() == std::vector<std::string>{"Alpha", "Beta"});
  CHECK(loaded.index_of("Beta") == std::optional<std::size_t>(1));
  test::write_file(dir.path() / "bad.json", R"({"labels":{"0":"A","2":"C"}})");
  // A gap in the indices surfaces as an empty label at validation.
  CHECK_THROWS_AS(TopicLabelTable::load(dir.path() / "bad.json").validate_for(3), ConfigInvalid);
}

TEST_CASE("synonym backfill assigns only unambiguous matches") {
  const TopicLabelTable labels({"Shots", "Operation Warp Speed"},
                               {{"Shots", {"jab"}}, {"Operation Warp Speed", {"warp speed"}}});
  const Normalizer norm(StopwordSet::english(), true);
  const std::vector<std::pair<std::string, TokenStream>> docs{
      {"1", norm(tokenize("got my jab today"))},
      {"2", norm(tokenize("Warp Speed money"))},
      {"3", norm(tokenize("jab and warp speed"))},
      {"4", norm(tokenize("speed warp"))},
  };
  const auto out = synonym_backfill(docs, labels, norm);
  REQUIRE(out.size() == 4);
  CHECK(out[0].primary == std::optional<std::string>("Shots"));
  CHECK(out[1].primary == std::optional<std::string>("Operation Warp Speed"));
  CHECK_FALSE(out[2].known());
  CHECK_FALSE(out[3].known());
  CHECK(out[1].doc_id == "2");
  CHECK(out[0].primary_prob == 0.0);
}

TEST_CASE("subtopics split a mixed topic and not a homogeneous one") {
  // Two planted sub-themes under one topic label.
  auto corpus = test::planted_corpus(80, 2, 8, 20, 8);
  std::vector<TopicAssignment> assign;
  for (const auto& d : corpus.docs) assign.push_back(test::assignment(d.source_id, "Mixed"));
  SubtopicOptions opt;
  opt.max_sub = 3;
  opt.min_docs = 30;
  opt.lda.iterations = 150;
  opt.lda.seed = 3;
  const auto subs = extract_subtopics(corpus.docs, assign, "Mixed", opt);
  REQUIRE(subs.size() >= 2);
  CHECK(subs.front().keywords.size() == 3);
  CHECK(subs.front().label.find(" / ") != std::string::npos);
  for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].doc_count >= subs[i].doc_count);

  CHECK(extract_subtopics(corpus.docs, assign, "Other", opt).empty());
  opt.min_docs = 1000;
  CHECK(extract_subtopics(corpus.docs, assign, "Mixed", opt).empty());
}

TEST_CASE("co-occurrence graph counts topic pairs and finds the strongest neighbor") {
  const std::vector<TopicAssignment> assign{
      test::assignment("1", "A", "B"), test::assignment("2", "B", "A"), test::assignment("3", "A", "C"),
      test::assignment("4", "C"),      test::assignment("5", std::nullopt)};
  const auto g = build_cooccurrence_graph(assign);
  CHECK(g.weight("A", "B") == 2);
  CHECK(g.weight("B", "A") == 2);
  CHECK(g.weight("A", "C") == 1);
  CHECK(g.weight("B", "C") == 0);
  CHECK(g.degree("A") == 2);
  CHECK(g.degree("C") == 1);
  CHECK(g.weighted_degree("A") == 3);
  CHECK(g.total_weight() == 3);
  CHECK(g.strongest_neighbor("A") == std::optional<std::string>("B"));
  CHECK(g.strongest_neighbor("C") == std::optional<std::string>("A"));
  CHECK_FALSE(g.strongest_neighbor("Z").has_value());
  CHECK(g.nodes().count("C") == 1);

  CooccurrenceGraph tie;
  tie.add_pair("Hub", "Zeta");
  tie.add_pair("Hub", "Beta");
  tie.add_pair("Hub", "Hub");
  CHECK(tie.strongest_neighbor("Hub") == std::optional<std::string>("Beta"));
  CHECK(tie.weight("Hub", "Hub") == 0);
}

TEST_CASE("top_words orders by probability with lower index on ties") {
  TopicModel m;
  m.num_topics = 1;
  m.vocab = {"a", "b", "c", "d"};
  m.phi = RowMatrix(1, 4);
  m.phi(0, 0) = 0.1;
  m.phi(0, 1) = 0.4;
  m.phi(0, 2) = 0.4;
  m.phi(0, 3) = 0.1;
  CHECK(m.top_words(0, 3) == std::vector<std::size_t>{1, 2, 0});
  CHECK(m.word_index("d") == std::optional<std::size_t>(3));
  CHECK_FALSE(m.word_index("z").has_value());
}
