#include "transrel/preannotate.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "transrel/error.hpp"
#include "transrel/subcat.hpp"

namespace transrel {

std::string_view to_string(Confidence confidence) noexcept {
  return confidence == Confidence::rule_certain ? "rule_certain" : "rule_heuristic";
}

std::vector<AlignedUnit> group_edges(const SentenceEdges& edges, std::size_t src_len,
                                     std::size_t tgt_len) {
  // Union-find over source nodes [0, src_len) and target nodes [src_len, src_len + tgt_len).
  std::vector<std::size_t> parent(src_len + tgt_len);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> src_used(src_len), tgt_used(tgt_len);
  for (const auto& e : edges) {
    if (e.src >= src_len || e.tgt >= tgt_len) {
      throw Error("BAD_INDEX", "edge " + std::to_string(e.src) + "-" + std::to_string(e.tgt) +
                                   " outside a " + std::to_string(src_len) + "x" +
                                   std::to_string(tgt_len) + " sentence");
    }
    src_used[e.src] = tgt_used[e.tgt] = true;
    const auto a = find(e.src);
    const auto b = find(src_len + e.tgt);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<AlignedUnit> units;
  std::vector<std::size_t> unit_of(src_len + tgt_len, SIZE_MAX);
  const auto unit_for = [&](std::size_t node) -> AlignedUnit& {
    const auto root = find(node);
    if (unit_of[root] == SIZE_MAX) {
      unit_of[root] = units.size();
      units.emplace_back();
    }
    return units[unit_of[root]];
  };
  for (std::size_t s = 0; s < src_len; ++s) {
    if (src_used[s]) unit_for(s).src.push_back(s);
  }
  for (std::size_t t = 0; t < tgt_len; ++t) {
    if (tgt_used[t]) unit_for(src_len + t).tgt.push_back(t);
  }
  for (auto& u : units) u.provenance = Provenance::suggested;
  sort_units(units);
  return units;
}

SentenceEdges diagonal_edges(std::size_t src_len, std::size_t tgt_len) {
  SentenceEdges edges;
  if (src_len == 0 || tgt_len == 0) return edges;
  for (std::size_t i = 0; i < src_len; ++i) edges.push_back({i, i * tgt_len / src_len});
  return edges;
}

namespace {

std::vector<IndexSet> uncovered_runs(std::size_t length, const std::vector<bool>& covered) {
  std::vector<IndexSet> runs;
  for (std::size_t i = 0; i < length; ++i) {
    if (covered[i]) continue;
    if (runs.empty() || runs.back().back() + 1 != i) runs.emplace_back();
    runs.back().push_back(i);
  }
  return runs;
}

Suggestion make(AlignedUnit unit, RelationLabel relation, std::optional<std::string> sub,
                Confidence confidence, std::string rule_id) {
  unit.relation = relation;
  unit.sub = std::move(sub);
  unit.provenance = Provenance::suggested;
  return {std::move(unit), confidence, std::move(rule_id)};
}

}  // namespace

std::vector<Suggestion> suggest_unaligned(const SentencePair& sentence,
                                          const std::vector<AlignedUnit>& units) {
  std::vector<bool> src_cov(sentence.src_tokens.size()), tgt_cov(sentence.tgt_tokens.size());
  for (const auto& u : units) {
    for (auto i : u.src) {
      if (i < src_cov.size()) src_cov[i] = true;
    }
    for (auto i : u.tgt) {
      if (i < tgt_cov.size()) tgt_cov[i] = true;
    }
  }
  std::vector<Suggestion> out;
  for (auto& run : uncovered_runs(src_cov.size(), src_cov)) {
    AlignedUnit unit;
    unit.src = std::move(run);
    out.push_back(make(std::move(unit), RelationLabel::unaligned_reduction, std::nullopt,
                       Confidence::rule_certain, "unaligned.source_run"));
  }
  for (auto& run : uncovered_runs(tgt_cov.size(), tgt_cov)) {
    AlignedUnit unit;
    unit.tgt = std::move(run);
    out.push_back(make(std::move(unit), RelationLabel::unaligned_explicitation, std::nullopt,
                       Confidence::rule_certain, "unaligned.target_run"));
  }
  return out;
}

std::optional<Suggestion> suggest_lexical_shift(const AlignedUnit& unit,
                                                const SentencePair& sentence) {
  if (unit.src.empty() || unit.tgt.empty() || !sentence.src_ling) return std::nullopt;
  auto sub = lexical_shift_rule(unit, sentence);
  if (!sub) return std::nullopt;
  const std::string rule = "lexical_shift." + *sub;
  return make(unit, RelationLabel::lexical_shift, std::move(sub), Confidence::rule_heuristic,
              rule);
}

bool is_whitelisted_transfer(std::string_view src_pos, std::string_view tgt_pos) noexcept {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 12> kWhitelist = {{
      {"ADP", "PART"},
      {"ADJ", "NOUN"},
      {"NOUN", "VERB"},
      {"ADP", "NOUN"},
      {"ADP", "VERB"},
      {"ADJ", "VERB"},
      {"VERB", "NOUN"},
      {"ADJ", "ADV"},
      {"DET", "PART"},
      {"PRON", "PART"},
      {"ADJ", "PART"},
      {"ADJ", "PROPN"},
  }};
  return std::find(kWhitelist.begin(), kWhitelist.end(), std::pair{src_pos, tgt_pos}) !=
         kWhitelist.end();
}

std::optional<Suggestion> suggest_transposition(const AlignedUnit& unit,
                                                const SentencePair& sentence) {
  if (unit.src.empty() || unit.tgt.empty() || !sentence.src_ling || !sentence.tgt_ling) {
    return std::nullopt;
  }
  const auto src = group_head_pos(unit.src, *sentence.src_ling).upos;
  const auto tgt = group_head_pos(unit.tgt, *sentence.tgt_ling).upos;
  if (src == tgt || !is_whitelisted_transfer(src, tgt)) return std::nullopt;
  return make(unit, RelationLabel::transposition, std::nullopt, Confidence::rule_heuristic,
              "transposition." + src + "->" + tgt);
}

namespace {

// Lexical shift beats transposition for one edge group.
std::optional<Suggestion> relabel(const AlignedUnit& unit, const SentencePair& sentence) {
  if (auto s = suggest_lexical_shift(unit, sentence)) return s;
  return suggest_transposition(unit, sentence);
}

}  // namespace

Preannotation preannotate_sentence(const SentencePair& sentence, const SentenceEdges& edges) {
  Preannotation out;
  out.draft = sentence;
  out.draft.units.clear();

  const auto groups = group_edges(edges, sentence.src_tokens.size(), sentence.tgt_tokens.size());
  out.suggestions = suggest_unaligned(sentence, groups);
  for (const auto& s : out.suggestions) out.draft.units.push_back(s.unit);
  for (const auto& g : groups) {
    if (auto s = relabel(g, sentence)) {
      out.draft.units.push_back(s->unit);
      out.suggestions.push_back(std::move(*s));
    } else {
      out.draft.units.push_back(g);
    }
  }
  sort_units(out.draft.units);
  return out;
}

std::vector<Suggestion> suggestion_delta(const SentencePair& current,
                                         const SentenceEdges& edges) {
  if (current.units.empty()) {
    const auto pre = preannotate_sentence(current, edges);
    std::vector<Suggestion> out;
    for (const auto& u : pre.draft.units) {
      const auto it = std::find_if(pre.suggestions.begin(), pre.suggestions.end(),
                                   [&](const Suggestion& s) { return s.unit == u; });
      out.push_back(it != pre.suggestions.end()
                        ? *it
                        : Suggestion{u, Confidence::rule_heuristic, "default.literal"});
    }
    return out;
  }
  auto out = suggest_unaligned(current, current.units);
  for (const auto& u : current.units) {
    if (u.relation != RelationLabel::literal || u.provenance != Provenance::suggested) continue;
    if (auto s = relabel(u, current)) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace transrel
