#include <doctest.h>

#include <filesystem>
#include <random>
#include <utility>

#include "amir/textprep.hpp"
#include "fixtures.hpp"

using namespace amir;

namespace {

std::vector<std::string> words(std::string_view text) { return tokenize(text).tokens; }

}  // namespace

TEST_CASE("tokenize splits on whitespace and punctuation") {
  CHECK(words("Hello, world!  It's fine.") == std::vector<std::string>{"Hello", "world", "It's", "fine"});
  CHECK(words("well-known side-effects...") == std::vector<std::string>{"well-known", "side-effects"});
  CHECK(words("--dash- -x") == std::vector<std::string>{"dash", "x"});
  CHECK(words("").empty());
  CHECK(words(" \t\n").empty());
}

TEST_CASE("hashtags keep their prefix and URLs stay whole") {
  CHECK(words("#Pfizer rocks #") == std::vector<std::string>{"#Pfizer", "rocks"});
  CHECK(words("see https://example.com/a?b=1, ok") ==
        std::vector<std::string>{"see", "https://example.com/a?b=1", "ok"});
  CHECK(is_hashtag("#covid"));
  CHECK_FALSE(is_hashtag("#"));
  CHECK(is_url("www.example.org"));
  CHECK_FALSE(is_url("example"));
}

TEST_CASE("UTF-8 letters are word characters; Unicode spaces separate") {
  CHECK(words("café naïve") == std::vector<std::string>{"café", "naïve"});
  CHECK(words("don’t “quote”") == std::vector<std::string>{"don’t", "quote"});
}

TEST_CASE("token spans index the source text") {
  const std::string text = "  #Jab, then https://x.io.  Done";
  for (const auto& s : tokenize_spans(text)) {
    CHECK(text.substr(s.begin, s.end - s.begin) == s.text);
  }
}

TEST_CASE("Porter stemmer reproduces the reference outputs") {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"},     {"ponies", "poni"},         {"ties", "ti"},
      {"caress", "caress"},       {"cats", "cat"},            {"feed", "feed"},
      {"agreed", "agre"},         {"plastered", "plaster"},   {"bled", "bled"},
      {"motoring", "motor"},      {"sing", "sing"},           {"conflated", "conflat"},
      {"troubled", "troubl"},     {"sized", "size"},          {"hopping", "hop"},
      {"tanned", "tan"},          {"falling", "fall"},        {"hissing", "hiss"},
      {"fizzed", "fizz"},         {"failing", "fail"},        {"filing", "file"},
      {"happy", "happi"},         {"sky", "sky"},             {"relational", "relat"},
      {"conditional", "condit"},  {"rational", "ration"},     {"digitizer", "digit"},
      {"operator", "oper"},       {"feudalism", "feudal"},    {"decisiveness", "decis"},
      {"hopefulness", "hope"},    {"callousness", "callous"}, {"formality", "formal"},
      {"sensitivity", "sensit"},  {"sensibility", "sensibl"}, {"triplicate", "triplic"},
      {"formative", "form"},      {"formalize", "formal"},    {"electricity", "electr"},
      {"electrical", "electr"},   {"hopeful", "hope"},        {"goodness", "good"},
      {"revival", "reviv"},       {"allowance", "allow"},     {"inference", "infer"},
      {"airliner", "airlin"},     {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"},   {"irritant", "irrit"},      {"replacement", "replac"},
      {"adjustment", "adjust"},   {"dependent", "depend"},    {"adoption", "adopt"},
      {"communism", "commun"},    {"activate", "activ"},      {"angularity", "angular"},
      {"homologous", "homolog"},  {"effective", "effect"},    {"bowdlerize", "bowdler"},
      {"probate", "probat"},      {"rate", "rate"},           {"cease", "ceas"},
      {"controlling", "control"}, {"rolling", "roll"},        {"generalizations", "gener"},
      {"oscillators", "oscil"},   {"vaccines", "vaccin"},     {"vaccination", "vaccin"},
      {"as", "as"},
  };
  for (const auto& [in, out] : cases) {
    INFO(in);
    CHECK(porter_stem(in) == out);
  }
}

TEST_CASE("normalizer lowercases, drops stopwords and optionally stems") {
  const Normalizer stemming(StopwordSet::english(), true);
  const Normalizer plain(StopwordSet::english(), false);
  const auto in = tokenize("The Vaccines are WORKING for #Pfizer users", "d1");
  CHECK(stemming(in).tokens == std::vector<std::string>{"vaccin", "work", "#pfizer", "user"});
  CHECK(plain(in).tokens == std::vector<std::string>{"vaccines", "working", "#pfizer", "users"});
  CHECK(stemming(in).source_id == "d1");
  CHECK(plain.term("The").empty());
  CHECK(stemming.term("HTTPS://X.IO/Path") == "https://x.io/path");
}

TEST_CASE("bundled stopword file matches the built-in list") {
  const auto file = StopwordSet::load(std::filesystem::path(AMIR_SOURCE_DIR) / "data" / "stopwords_en.txt");
  const auto& builtin = StopwordSet::english();
  CHECK(file.size() == builtin.size());
  for (const char* w : {"the", "and", "is", "not", "very"}) CHECK(file.contains(w) == builtin.contains(w));
}

TEST_CASE("stopword loading skips comments and blanks") {
  test::TempDir dir;
  test::write_file(dir.path() / "s.txt", "# comment\n\nFoo\nbar\n");
  const auto s = StopwordSet::load(dir.path() / "s.txt");
  CHECK(s.size() == 2);
  CHECK(s.contains("foo"));
}

TEST_CASE("property: normalization is idempotent and deterministic") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pool{"generalizations", "vaccines", "The", "running", "#Covid", "it's",
                                      "hopefulness", "https://a.b/c", "ies", "ss", "sses", "ying",
                                      "controlling", "operational", "agreed", "a", "OK", "izer"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (bool stem : {true, false}) {
    const Normalizer n(StopwordSet::english(), stem);
    for (int iter = 0; iter < 300; ++iter) {
      std::string text;
      for (int i = len(rng); i > 0; --i) text += pool[pick(rng)] + " ";
      const auto once = n(tokenize(text));
      CHECK(n(once) == once);
      CHECK(n(tokenize(text)) == once);
    }
  }
}
