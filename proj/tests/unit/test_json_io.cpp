#include <doctest.h>

#include "amir/error.hpp"
#include "amir/json_io.hpp"
#include "fixtures.hpp"

using namespace amir;
using nlohmann::json;

namespace {

template <typename T>
T round_trip(const T& value) {
  return json::parse(json(value).dump()).get<T>();
}

}  // namespace

TEST_CASE("value types survive a JSON round trip") {
  const Tweet t{"t1", "multi\nline \"quoted\"", true, 1, 2, 3};
  CHECK(round_trip(t) == t);

  FactArticle a{"a1", "Title", "Body", "site", std::string("2021-05-01")};
  const auto a2 = round_trip(a);
  CHECK(a2.published == a.published);
  a.published.reset();
  CHECK(json(a)["published"].is_null());
  CHECK_FALSE(round_trip(a).published.has_value());

  const auto asg = test::assignment("d", "Shots", "Choices");
  const auto asg2 = round_trip(asg);
  CHECK(asg2.primary == asg.primary);
  CHECK(asg2.secondary == asg.secondary);
  CHECK(asg2.primary_prob == asg.primary_prob);
  const auto unknown = round_trip(test::assignment("u", std::nullopt));
  CHECK_FALSE(unknown.known());

  const EntitySpan e{"Pfizer", 3, 9, "VAC_TYPE"};
  CHECK(round_trip(e) == e);
  const auto s = round_trip(SentimentLabel{Polarity::Negative, -0.4});
  CHECK(s.polarity == Polarity::Negative);
  CHECK(s.compound == -0.4);
  CHECK(round_trip(MatchCriteria{false, 2, false}) == MatchCriteria{false, 2, false});
}

TEST_CASE("topic models and graphs round-trip exactly") {
  const auto corpus = test::planted_corpus(20, 2, 5, 10, 1);
  LdaParams p;
  p.num_topics = 2;
  p.iterations = 20;
  const auto m = fit_lda(corpus.docs, p);
  const auto m2 = round_trip(m);
  CHECK(m2.phi == m.phi);
  CHECK(m2.theta == m.theta);
  CHECK(m2.vocab == m.vocab);
  CHECK(m2.seed == m.seed);

  json broken = m;
  broken["num_topics"] = 3;
  CHECK_THROWS_AS(broken.get<TopicModel>(), InvalidArgument);

  CooccurrenceGraph g;
  g.add_pair("A", "B", 3);
  g.add_node("Lonely");
  const auto g2 = round_trip(g);
  CHECK(g2.weight("A", "B") == 3);
  CHECK(g2.nodes().count("Lonely") == 1);
}

TEST_CASE("mapping tables are JSON lists with nullable targets") {
  const std::vector<MappingResult> maps{
      {"Shots", "School", MappingMethod::Distance, 0.1, {}, "School"},
      {"OWS", std::nullopt, MappingMethod::Naive, 0.0, {"speed"}, std::nullopt}};
  const auto j = mapping_table_json(maps);
  REQUIRE(j.is_array());
  CHECK(j[1]["target_topic"].is_null());
  CHECK(j[1]["method"] == "naive");
  const auto back = mapping_table_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back[0].target_topic == maps[0].target_topic);
  CHECK(back[1].matched_keywords == maps[1].matched_keywords);
  CHECK_FALSE(back[1].nearest.has_value());
  CHECK_THROWS_AS(mapping_table_from_json(json::object()), InvalidArgument);
}

TEST_CASE("recommendation and report documents") {
  ArticleRecommendation fc;
  fc.target_id = "t1";
  fc.items = {{"a1", 0.7}};
  fc.tier = Tier::Near;
  const auto jf = recommendation_json(fc);
  CHECK(jf["approach"] == "fc");
  CHECK(jf["tier"] == "Near");
  CHECK(jf["items"][0]["id"] == "a1");

  CounterTweetRecommendation sm;
  sm.target_id = "t2";
  sm.relaxed = true;
  const auto js = recommendation_json(sm);
  CHECK(js["tier"].is_null());
  CHECK(js["relaxed"] == true);
  CHECK(js["items"].empty());

  EvalReport r;
  r.approach = Approach::FactCheck;
  r.cutoffs = {3};
  r.mrr = {{3, 0.5}};
  r.map = {{3, 0.25}};
  const auto jr = report_json(r);
  CHECK(jr["approach"] == "AMIR_FC");
  CHECK(jr["metrics"]["MAP@3"] == 0.25);
}
