#include "amir/annotate.hpp"

#include <algorithm>
#include <tuple>
#include <fstream>

#include "amir/error.hpp"
#include "amir/textprep.hpp"

namespace amir {
namespace {

std::string joined_term(std::string_view term) {
  std::string out;
  for (const auto& span : tokenize_spans(term)) {
    if (!out.empty()) out += ' ';
    out += to_lower_ascii(span.text);
  }
  return out;
}

bool plain_gap(std::string_view text, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(from),
                     text.begin() + static_cast<std::ptrdiff_t>(to),
                     [](char c) { return c == ' ' || c == '\t'; });
}

bool overlaps(const EntitySpan& a, const EntitySpan& b) { return a.start < b.end && b.start < a.end; }

}  // namespace

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gazetteer " + path.string());
  Gazetteer g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw MalformedLine(line_no, "expected label<TAB>term");
    const std::string label = line.substr(0, tab);
    if (label.empty()) throw MalformedLine(line_no, "empty label");
    try {
      g.add(label, std::string_view(line).substr(tab + 1));
    } catch (const InvalidArgument& e) {
      throw MalformedLine(line_no, e.what());
    }
  }
  return g;
}

void Gazetteer::add(const std::string& label, std::string_view term) {
  const std::string key = joined_term(term);
  if (key.empty()) throw InvalidArgument("empty gazetteer term");
  auto [it, inserted] = index_.emplace(key, label);
  if (!inserted && it->second != label) {
    throw InvalidArgument("term '" + key + "' already filed under " + it->second);
  }
  classes_[label].insert(key);
  const auto n = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  max_tokens_ = std::max(max_tokens_, n);
}

std::optional<std::string> Gazetteer::lookup(const std::string& joined_tokens) const {
  auto it = index_.find(joined_tokens);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<EntitySpan> recognize(std::string_view text, const Gazetteer& gazetteer,
                                  const EntityTagger* base) {
  std::vector<EntitySpan> out;
  const auto tokens = tokenize_spans(text);
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::string key;
    std::optional<std::pair<std::size_t, std::string>> best;  // (last token, label)
    for (std::size_t j = i; j < tokens.size() && j - i < gazetteer.max_term_tokens(); ++j) {
      if (j > i) {
        if (!plain_gap(text, tokens[j - 1].end, tokens[j].begin)) break;
        key += ' ';
      }
      key += to_lower_ascii(tokens[j].text);
      if (auto label = gazetteer.lookup(key)) best.emplace(j, std::move(*label));
    }
    if (best) {
      const std::size_t b = tokens[i].begin;
      const std::size_t e = tokens[best->first].end;
      out.push_back({std::string(text.substr(b, e - b)), b, e, std::move(best->second)});
      i = best->first + 1;
    } else {
      ++i;
    }
  }

  if (base) {
    const std::size_t gazetteer_spans = out.size();
    for (auto& span : base->tag(text)) {
      if (span.start >= span.end || span.end > text.size()) continue;
      const bool clash = std::any_of(out.begin(), out.end(),
                                     [&](const EntitySpan& o) { return overlaps(o, span); });
      if (clash) continue;
      span.surface = std::string(text.substr(span.start, span.end - span.start));
      out.push_back(std::move(span));
    }
    if (out.size() != gazetteer_spans) {
      std::sort(out.begin(), out.end(), [](const EntitySpan& a, const EntitySpan& b) {
        return std::tie(a.start, a.end) < std::tie(b.start, b.end);
      });
    }
  }
  return out;
}

NerMetrics evaluate_ner(std::span<const std::vector<EntitySpan>> predicted,
                        std::span<const std::vector<EntitySpan>> gold) {
  if (predicted.size() != gold.size()) throw DocMismatch(predicted.size(), gold.size());
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;
  std::size_t tp = 0;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    auto key = [](const EntitySpan& s) { return std::tie(s.start, s.end, s.label); };
    std::vector<EntitySpan> g = gold[d];
    n_pred += predicted[d].size();
    n_gold += g.size();
    for (const auto& p : predicted[d]) {
      auto it = std::find_if(g.begin(), g.end(), [&](const EntitySpan& x) { return key(x) == key(p); });
      if (it != g.end()) {
        ++tp;
        g.erase(it);
      }
    }
  }
  auto ratio = [](std::size_t num, std::size_t den, bool other_empty) {
    if (den == 0) return other_empty ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  NerMetrics m;
  m.precision = ratio(tp, n_pred, n_gold == 0);
  m.recall = ratio(tp, n_gold, n_pred == 0);
  m.accuracy = m.recall;
  m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

EntityCoverage entity_coverage(std::span<const Tweet> tweets, const Gazetteer& gazetteer,
                               const EntityTagger* base) {
  EntityCoverage c;
  for (const auto& t : tweets) {
    if (!recognize(t.text, gazetteer, base).empty()) ++c.count;
  }
  if (!tweets.empty()) c.fraction = static_cast<double>(c.count) / static_cast<double>(tweets.size());
  return c;
}

}  // namespace amir
