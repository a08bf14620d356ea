#include <doctest.h>

#include <filesystem>
#include <random>

#include "amir/annotate.hpp"
#include "amir/error.hpp"
#include "fixtures.hpp"

using namespace amir;

namespace {

Gazetteer small_gazetteer() {
  Gazetteer g;
  g.add("VAC_TYPE", "pfizer");
  g.add("VAC_TYPE", "johnson");
  g.add("VAC_TYPE", "johnson and johnson");
  g.add("VAC_TYPE", "#pfizer");
  g.add("PERSON", "trump");
  g.add("EVENT", "lock down");
  return g;
}

std::vector<std::string> surfaces(const std::vector<EntitySpan>& spans) {
  std::vector<std::string> out;
  for (const auto& s : spans) out.push_back(s.surface);
  return out;
}

class FixedTagger final : public EntityTagger {
 public:
  explicit FixedTagger(std::vector<EntitySpan> spans) : spans_(std::move(spans)) {}
  std::vector<EntitySpan> tag(std::string_view) const override { return spans_; }

 private:
  std::vector<EntitySpan> spans_;
};

SentimentLexicon lexicon() { return SentimentLexicon({{"good", 1.9}, {"bad", -2.5}, {"great", 3.1}}); }

}  // namespace

TEST_CASE("gazetteer matches case-insensitively with the longest term winning") {
  const auto g = small_gazetteer();
  const std::string text = "Johnson and Johnson beats PFIZER, says Trump.";
  const auto spans = recognize(text, g);
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].surface == "Johnson and Johnson");
  CHECK(spans[0].start == 0);
  CHECK(spans[0].end == 19);
  CHECK(spans[0].label == "VAC_TYPE");
  CHECK(spans[1].surface == "PFIZER");
  CHECK(spans[2].label == "PERSON");
  for (const auto& s : spans) CHECK(text.substr(s.start, s.end - s.start) == s.surface);
}

TEST_CASE("multi-word terms do not match across punctuation") {
  const auto g = small_gazetteer();
  CHECK(surfaces(recognize("johnson, and johnson", g)) == std::vector<std::string>{"johnson", "johnson"});
  CHECK(surfaces(recognize("the lock  down ended", g)) == std::vector<std::string>{"lock  down"});
  CHECK(surfaces(recognize("lockdown", g)).empty());
  CHECK(surfaces(recognize("#Pfizer and pfizers", g)) == std::vector<std::string>{"#Pfizer"});
}

TEST_CASE("base tagger spans fill gaps but never override the gazetteer") {
  const auto g = small_gazetteer();
  const std::string text = "pfizer in Berlin";
  const FixedTagger tagger({{"pfizer in", 0, 9, "ORG"}, {"Berlin", 10, 16, "LOC"}});
  const auto spans = recognize(text, g, &tagger);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].label == "VAC_TYPE");
  CHECK(spans[1].label == "LOC");
}

TEST_CASE("gazetteer rejects a term filed under two classes and loads TSV") {
  Gazetteer g;
  g.add("VAC_TYPE", "Moderna");
  CHECK_NOTHROW(g.add("VAC_TYPE", "moderna"));
  CHECK_THROWS_AS(g.add("ORG", "moderna"), InvalidArgument);
  CHECK(g.lookup("moderna") == std::optional<std::string>("VAC_TYPE"));

  const auto bundled = Gazetteer::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "gazetteer.tsv");
  CHECK(bundled.lookup("johnson and johnson") == std::optional<std::string>("VAC_TYPE"));
  CHECK(bundled.classes().at("VAC_TYPE").size() >= 21);
  CHECK(bundled.max_term_tokens() == 3);
}

TEST_CASE("NER evaluation: exact spans, micro-averaged") {
  const EntitySpan a{"pfizer", 0, 6, "VAC_TYPE"};
  const EntitySpan b{"trump", 10, 15, "PERSON"};
  const std::vector<std::vector<EntitySpan>> gold{{a, b}};
  const std::vector<std::vector<EntitySpan>> pred{{a}};
  // P = 1, R = 1/2 -> F1 = 2/3.
  const auto m = evaluate_ner(pred, gold);
  CHECK(m.precision == doctest::Approx(1.0));
  CHECK(m.recall == doctest::Approx(0.5));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(m.accuracy == doctest::Approx(0.5));

  const auto perfect = evaluate_ner(gold, gold);
  CHECK(perfect.f1 == 1.0);
  CHECK(perfect.accuracy == 1.0);

  const std::vector<std::vector<EntitySpan>> wrong_label{{{"pfizer", 0, 6, "ORG"}}};
  CHECK(evaluate_ner(wrong_label, std::vector<std::vector<EntitySpan>>{{a}}).f1 == 0.0);

  const std::vector<std::vector<EntitySpan>> none(2);
  CHECK(evaluate_ner(none, none).f1 == 1.0);
  CHECK_THROWS_AS(evaluate_ner(pred, none), DocMismatch);
}

TEST_CASE("entity coverage counts tweets with at least one entity") {
  const auto g = small_gazetteer();
  const std::vector<Tweet> tweets{{"1", "pfizer again", false}, {"2", "nothing here", false},
                                  {"3", "Trump", true}, {"4", "", false}};
  const auto c = entity_coverage(tweets, g);
  CHECK(c.count == 2);
  CHECK(c.fraction == doctest::Approx(0.5));
}

TEST_CASE("property: recognized spans are sorted, disjoint and match the text") {
  const auto g = Gazetteer::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "gazetteer.tsv");
  const std::vector<std::string> pool{"johnson", "and", "Johnson", "pfizer", "#Pfizer", "lock", "down",
                                      "moderna,", "x", "the", "biden!", "mRNA", "  ", "\t", "jnj."};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int iter = 0; iter < 500; ++iter) {
    std::string text;
    for (int i = 0; i < 12; ++i) text += pool[pick(rng)] + (i % 3 ? " " : "");
    const auto spans = recognize(text, g);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      CHECK(text.substr(spans[i].start, spans[i].end - spans[i].start) == spans[i].surface);
      if (i > 0) CHECK(spans[i - 1].end <= spans[i].start);
    }
  }
}

TEST_CASE("sentiment compound scores follow the valence rules") {
  const auto lex = lexicon();
  // compound = s / sqrt(s^2 + 15)
  CHECK(classify_sentiment("good", lex).compound == doctest::Approx(0.44043357076016854));
  CHECK(classify_sentiment("very good", lex).compound == doctest::Approx(0.4927250317396701));
  CHECK(classify_sentiment("not good", lex).compound == doctest::Approx(-0.3412376512543242));
  CHECK(classify_sentiment("GOOD day", lex).compound == doctest::Approx(0.5622182239284726));
  CHECK(classify_sentiment("good!", lex).compound == doctest::Approx(0.4925548702193134));
  CHECK(classify_sentiment("good but bad", lex).compound == doctest::Approx(-0.5858817654461621));
  CHECK(classify_sentiment("GOOD", lex).compound == doctest::Approx(0.44043357076016854));
}

TEST_CASE("sentiment polarity thresholds") {
  const auto lex = lexicon();
  CHECK(classify_sentiment("good", lex).polarity == Polarity::Positive);
  CHECK(classify_sentiment("bad", lex).polarity == Polarity::Negative);
  CHECK(classify_sentiment("the table", lex).polarity == Polarity::Neutral);
  CHECK(classify_sentiment("", lex).compound == 0.0);
  CHECK(polarity_of(0.05) == Polarity::Positive);
  CHECK(polarity_of(0.0499) == Polarity::Neutral);
  CHECK(polarity_of(-0.05) == Polarity::Negative);
  for (auto p : {Polarity::Positive, Polarity::Negative, Polarity::Neutral}) {
    CHECK(polarity_from_string(to_string(p)) == p);
  }
  CHECK_THROWS_AS(polarity_from_string("meh"), InvalidArgument);
}

TEST_CASE("property: compound stays in [-1, 1]") {
  const auto lex = SentimentLexicon::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "sentiment_lexicon.tsv");
  CHECK(lex.valence("good") == std::optional<double>(1.9));
  const std::vector<std::string> pool{"good", "BAD", "not", "very", "but", "great!!!", "scam", "??", "safe",
                                      "never", "extremely", "deadly", "kind", "of", "LOVE"};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int iter = 0; iter < 500; ++iter) {
    std::string text;
    for (int i = 0; i < 10; ++i) text += pool[pick(rng)] + " ";
    const auto s = classify_sentiment(text, lex);
    CHECK(s.compound >= -1.0);
    CHECK(s.compound <= 1.0);
    CHECK(s.polarity == polarity_of(s.compound));
  }
}
