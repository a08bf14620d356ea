#include "amir/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "amir/error.hpp"

namespace amir {
namespace {

constexpr std::size_t kMaxStemRounds = 32;

unsigned char at(std::string_view s, std::size_t i) {
  return i < s.size() ? static_cast<unsigned char>(s[i]) : 0;
}

// Length of the whitespace character starting at i, 0 if none.
std::size_t whitespace_len(std::string_view s, std::size_t i) {
  const unsigned char c = at(s, i);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  if (c == 0xC2 && (at(s, i + 1) == 0x85 || at(s, i + 1) == 0xA0)) return 2;
  if (c == 0xE1 && at(s, i + 1) == 0x9A && at(s, i + 2) == 0x80) return 3;
  if (c == 0xE2 && at(s, i + 1) == 0x80) {
    const unsigned char d = at(s, i + 2);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9 || d == 0xAF) return 3;
  }
  if (c == 0xE2 && at(s, i + 1) == 0x81 && at(s, i + 2) == 0x9F) return 3;
  if (c == 0xE3 && at(s, i + 1) == 0x80 && at(s, i + 2) == 0x80) return 3;
  return 0;
}

std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 1;  // stray continuation byte
}

// U+2010..U+203F (dashes, quotes, ellipsis...) and U+00A1..U+00BF.
std::size_t unicode_punct_len(std::string_view s, std::size_t i) {
  const unsigned char c = at(s, i);
  if (c == 0xE2 && at(s, i + 1) == 0x80 && at(s, i + 2) >= 0x90 && at(s, i + 2) <= 0xBF) return 3;
  if (c == 0xC2 && at(s, i + 1) >= 0xA1 && at(s, i + 1) <= 0xBF) return 2;
  return 0;
}

bool is_right_single_quote(std::string_view s, std::size_t i) {
  return at(s, i) == 0xE2 && at(s, i + 1) == 0x80 && at(s, i + 2) == 0x99;
}

// Length of the word character at i, 0 if it is not one.
std::size_t word_char_len(std::string_view s, std::size_t i) {
  if (i >= s.size()) return 0;
  const unsigned char c = at(s, i);
  if (c < 0x80) {
    return (std::isalnum(c) || c == '_') ? 1 : 0;
  }
  if (whitespace_len(s, i) || unicode_punct_len(s, i)) return 0;
  return std::min(utf8_len(c), s.size() - i);
}

// Length of an in-word joiner at i: '-', '\'' or U+2019.
std::size_t joiner_len(std::string_view s, std::size_t i) {
  const unsigned char c = at(s, i);
  if (c == '-' || c == '\'') return 1;
  if (is_right_single_quote(s, i)) return 3;
  return 0;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

bool url_prefix(std::string_view s) {
  return starts_with_ci(s, "http://") || starts_with_ci(s, "https://") || starts_with_ci(s, "www.");
}

void split_chunk(std::string_view text, std::size_t begin, std::size_t end,
                 std::vector<TokenSpan>& out) {
  const std::string_view chunk = text.substr(begin, end - begin);
  if (url_prefix(chunk)) {
    std::size_t e = end;
    while (e > begin && std::ispunct(static_cast<unsigned char>(text[e - 1])) && text[e - 1] != '/') {
      --e;
    }
    out.push_back({std::string(text.substr(begin, e - begin)), begin, e});
    return;
  }

  std::size_t p = begin;
  while (p < end) {
    const bool hashtag = text[p] == '#' && p + 1 < end && word_char_len(text, p + 1) > 0;
    if (!hashtag && word_char_len(text, p) == 0) {
      std::size_t skip = unicode_punct_len(text, p);
      if (skip == 0) skip = utf8_len(at(text, p));
      p += std::max<std::size_t>(skip, 1);
      continue;
    }
    const std::size_t tb = p;
    if (hashtag) ++p;
    while (p < end) {
      if (const std::size_t w = word_char_len(text, p); w > 0 && p + w <= end) {
        p += w;
        continue;
      }
      const std::size_t j = joiner_len(text, p);
      if (j > 0 && p + j < end && word_char_len(text, p + j) > 0) {
        p += j;
        continue;
      }
      break;
    }
    out.push_back({std::string(text.substr(tb, p - tb)), tb, p});
  }
}

bool all_ascii_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (const std::size_t ws = whitespace_len(text, i); ws > 0) {
      i += ws;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && whitespace_len(text, j) == 0) {
      j += std::min(utf8_len(at(text, j)), text.size() - j);
    }
    split_chunk(text, i, j, out);
    i = j;
  }
  return out;
}

TokenStream tokenize(std::string_view text, std::string source_id) {
  TokenStream ts;
  ts.source_id = std::move(source_id);
  for (auto& span : tokenize_spans(text)) ts.tokens.push_back(std::move(span.text));
  return ts;
}

bool is_hashtag(std::string_view token) noexcept { return token.size() > 1 && token[0] == '#'; }

bool is_url(std::string_view token) noexcept { return url_prefix(token); }

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

// ---- stopwords ------------------------------------------------------------

StopwordSet::StopwordSet(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

void StopwordSet::insert(std::string_view word) { words_.insert(to_lower_ascii(word)); }

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

StopwordSet StopwordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    set.insert(std::string_view(line).substr(b, e - b + 1));
  }
  return set;
}

const StopwordSet& StopwordSet::english() {
  static const StopwordSet set{
      "a",       "about",   "above",  "after",   "again",   "against", "all",    "am",
      "an",      "and",     "any",    "are",     "aren't",  "as",      "at",     "be",
      "because", "been",    "before", "being",   "below",   "between", "both",   "but",
      "by",      "can",     "could",  "did",     "didn't",  "do",      "does",   "doesn't",
      "doing",   "don't",   "down",   "during",  "each",    "few",     "for",    "from",
      "further", "had",     "has",    "have",    "having",  "he",      "her",    "here",
      "hers",    "herself", "him",    "himself", "his",     "how",     "i",      "if",
      "in",      "into",    "is",     "isn't",   "it",      "it's",    "its",    "itself",
      "just",    "me",      "more",   "most",    "my",      "myself",  "no",     "nor",
      "not",     "now",     "of",     "off",     "on",      "once",    "only",   "or",
      "other",   "our",     "ours",   "ourselves", "out",   "over",    "own",    "same",
      "she",     "should",  "so",     "some",    "such",    "than",    "that",   "the",
      "their",   "theirs",  "them",   "themselves", "then", "there",   "these",  "they",
      "this",    "those",   "through", "to",     "too",     "under",   "until",  "up",
      "very",    "was",     "wasn't", "we",      "were",    "what",    "when",   "where",
      "which",   "while",   "who",    "whom",    "why",     "will",    "with",   "won't",
      "would",   "you",     "your",   "yours",   "yourself", "yourselves", "rt",  "amp",
      "im",      "u",       "ur",     "get",     "got",     "also",    "via",    "us"};
  return set;
}

// ---- normalization --------------------------------------------------------

std::string Normalizer::term(std::string_view token) const {
  if (token.empty()) return {};
  std::string lower = to_lower_ascii(token);
  if (is_hashtag(lower) || is_url(lower)) return lower;
  if (stopwords_.contains(lower)) return {};
  if (!stem_ || !all_ascii_alpha(lower)) return lower;
  std::string s = std::move(lower);
  for (std::size_t round = 0; round < kMaxStemRounds; ++round) {
    std::string next = porter_stem(s);
    if (next == s) break;
    s = std::move(next);
  }
  if (s.empty() || stopwords_.contains(s)) return {};
  return s;
}

TokenStream Normalizer::operator()(const TokenStream& stream) const {
  TokenStream out;
  out.source_id = stream.source_id;
  out.tokens.reserve(stream.tokens.size());
  for (const auto& tok : stream.tokens) {
    std::string t = term(tok);
    if (!t.empty()) out.tokens.push_back(std::move(t));
  }
  return out;
}

TokenStream normalize(const TokenStream& stream, const StopwordSet& stopwords, bool stem) {
  return Normalizer(stopwords, stem)(stream);
}

}  // namespace amir
