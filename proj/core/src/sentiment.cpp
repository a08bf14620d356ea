// Rule-based valence scorer in the style of the common social-media
// sentiment lexicon tools: per-word valences adjusted by neighbouring
// boosters and negations, then squashed into [-1, 1].

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "amir/annotate.hpp"
#include "amir/error.hpp"
#include "amir/textprep.hpp"

namespace amir {
namespace {

constexpr double kBoostIncrement = 0.293;
constexpr double kBoostDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kNormalizationAlpha = 15.0;
constexpr double kExclamationBoost = 0.292;
constexpr std::size_t kMaxExclamations = 4;
constexpr double kQuestionBoost = 0.18;
constexpr double kManyQuestionsBoost = 0.96;

const std::unordered_set<std::string>& boosters_up() {
  static const std::unordered_set<std::string> s{
      "absolutely", "amazingly",   "awfully",     "completely", "considerably", "decidedly",
      "deeply",     "effing",      "enormously",  "entirely",   "especially",   "exceptionally",
      "extremely",  "fabulously",  "flipping",    "fully",      "greatly",      "highly",
      "hugely",     "incredibly",  "intensely",   "majorly",    "more",         "most",
      "particularly", "purely",    "quite",       "really",     "remarkably",   "so",
      "substantially", "thoroughly", "totally",   "tremendously", "uber",       "unbelievably",
      "unusually",  "utterly",     "very"};
  return s;
}

const std::unordered_set<std::string>& boosters_down() {
  static const std::unordered_set<std::string> s{
      "almost", "barely",   "hardly",       "kinda",  "less",     "little", "marginally",
      "occasionally", "partly", "scarcely", "slightly", "somewhat", "sorta"};
  return s;
}

const std::unordered_set<std::string>& negations() {
  static const std::unordered_set<std::string> s{
      "aint",    "arent",  "cannot",  "cant",    "couldnt", "darent", "didnt",   "doesnt",
      "dont",    "hadnt",  "hasnt",   "havent",  "isnt",    "mightnt", "mustnt", "neither",
      "never",   "no",     "nobody",  "none",    "nope",    "nor",     "not",    "nothing",
      "nowhere", "shant",  "shouldnt", "wasnt",  "werent",  "without", "wont",   "wouldnt"};
  return s;
}

struct Word {
  std::string raw;    // punctuation stripped, case kept
  std::string lower;
  bool upper = false;  // all cased letters upper, at least one letter
};

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view chunk = text.substr(i, j - i);
    i = j;
    while (!chunk.empty() && std::ispunct(static_cast<unsigned char>(chunk.front()))) chunk.remove_prefix(1);
    while (!chunk.empty() && std::ispunct(static_cast<unsigned char>(chunk.back()))) chunk.remove_suffix(1);
    if (chunk.empty()) continue;
    Word w;
    w.raw = std::string(chunk);
    w.lower = to_lower_ascii(chunk);
    bool letters = false;
    bool all_upper = true;
    for (char c : w.raw) {
      const auto u = static_cast<unsigned char>(c);
      if (std::isalpha(u)) {
        letters = true;
        if (std::islower(u)) all_upper = false;
      }
    }
    w.upper = letters && all_upper;
    words.push_back(std::move(w));
  }
  return words;
}

bool is_negation(const std::string& lower) {
  if (negations().count(lower)) return true;
  std::string plain;
  for (char c : lower) {
    if (c != '\'') plain += c;
  }
  if (negations().count(plain)) return true;
  return lower.size() > 3 && lower.compare(lower.size() - 3, 3, "n't") == 0;
}

double booster_scalar(const Word& w, double valence, bool caps_differ) {
  double scalar = 0.0;
  if (boosters_up().count(w.lower)) scalar = kBoostIncrement;
  else if (boosters_down().count(w.lower)) scalar = kBoostDecrement;
  else return 0.0;
  if (valence < 0.0) scalar = -scalar;
  if (w.upper && caps_differ) scalar += valence > 0.0 ? kCapsIncrement : -kCapsIncrement;
  return scalar;
}

}  // namespace

const char* to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return "Positive";
    case Polarity::Negative: return "Negative";
    case Polarity::Neutral: return "Neutral";
  }
  return "Neutral";
}

Polarity polarity_from_string(std::string_view s) {
  const std::string l = to_lower_ascii(s);
  if (l == "positive") return Polarity::Positive;
  if (l == "negative") return Polarity::Negative;
  if (l == "neutral") return Polarity::Neutral;
  throw InvalidArgument("unknown polarity: " + std::string(s));
}

Polarity polarity_of(double compound) noexcept {
  if (compound >= kPositiveThreshold) return Polarity::Positive;
  if (compound <= kNegativeThreshold) return Polarity::Negative;
  return Polarity::Neutral;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sentiment lexicon " + path.string());
  std::unordered_map<std::string, double> valences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw MalformedLine(line_no, "expected term<TAB>valence");
    const auto end = line.find('\t', tab + 1);
    const std::string num = line.substr(tab + 1, end == std::string::npos ? std::string::npos : end - tab - 1);
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw MalformedLine(line_no, "bad valence '" + num + "'");
    valences[to_lower_ascii(line.substr(0, tab))] = v;
  }
  return SentimentLexicon(std::move(valences));
}

std::optional<double> SentimentLexicon::valence(std::string_view lowered) const {
  auto it = valences_.find(std::string(lowered));
  if (it == valences_.end()) return std::nullopt;
  return it->second;
}

SentimentLabel classify_sentiment(std::string_view text, const SentimentLexicon& lexicon) {
  const auto words = split_words(text);
  const bool caps_differ =
      std::any_of(words.begin(), words.end(), [](const Word& w) { return w.upper; }) &&
      !std::all_of(words.begin(), words.end(), [](const Word& w) { return w.upper; });

  std::vector<double> sentiments(words.size(), 0.0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (boosters_up().count(w.lower) || boosters_down().count(w.lower)) continue;
    auto base = lexicon.valence(w.lower);
    if (!base) continue;
    double v = *base;
    if (w.upper && caps_differ) v += v > 0.0 ? kCapsIncrement : -kCapsIncrement;
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      const Word& prev = words[i - back];
      if (!lexicon.valence(prev.lower)) {
        double s = booster_scalar(prev, v, caps_differ);
        if (back == 2) s *= 0.95;
        if (back == 3) s *= 0.9;
        v += s;
      }
      if (is_negation(prev.lower)) v *= kNegationScalar;
    }
    sentiments[i] = v;
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].lower != "but") continue;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (j < i) sentiments[j] *= 0.5;
      else if (j > i) sentiments[j] *= 1.5;
    }
    break;
  }

  double sum = 0.0;
  for (double s : sentiments) sum += s;
  if (sum != 0.0) {
    const auto bangs = std::min<std::size_t>(
        static_cast<std::size_t>(std::count(text.begin(), text.end(), '!')), kMaxExclamations);
    const auto questions = static_cast<std::size_t>(std::count(text.begin(), text.end(), '?'));
    double emphasis = static_cast<double>(bangs) * kExclamationBoost;
    if (questions > 1) {
      emphasis += questions <= 3 ? static_cast<double>(questions) * kQuestionBoost : kManyQuestionsBoost;
    }
    sum += sum > 0.0 ? emphasis : -emphasis;
  }

  SentimentLabel out;
  out.compound = std::clamp(sum / std::sqrt(sum * sum + kNormalizationAlpha), -1.0, 1.0);
  out.polarity = polarity_of(out.compound);
  return out;
}

}  // namespace amir
