#include "transrel/subcat.hpp"

#include <algorithm>
#include <array>

#include "transrel/error.hpp"
#include "transrel/text.hpp"

namespace transrel {

namespace {

void expect_relation(const AlignedUnit& unit, std::initializer_list<RelationLabel> allowed,
                     const char* classifier) {
  if (std::find(allowed.begin(), allowed.end(), unit.relation) == allowed.end()) {
    throw Error("WRONG_RELATION", std::string(classifier) + " cannot classify a " +
                                      std::string(to_string(unit.relation)) + " unit");
  }
}

const LingSequence& need_ling(const std::optional<LingSequence>& ling,
                              const SentencePair& pair, const char* side) {
  if (!ling) {
    throw Error("MISSING_LING", "sentence " + pair.id + " has no " + side +
                                    " linguistic annotation");
  }
  return *ling;
}

bool any_target_token(const AlignedUnit& unit, const SentencePair& pair,
                      std::initializer_list<std::string_view> words) {
  for (TokenIndex i : unit.tgt) {
    const std::string& t = pair.tgt_tokens.at(i);
    if (std::find(words.begin(), words.end(), t) != words.end()) return true;
  }
  return false;
}

std::string joined_source(const AlignedUnit& unit, const SentencePair& pair) {
  std::string out;
  for (TokenIndex i : unit.src) {
    if (!out.empty()) out += ' ';
    out += pair.src_tokens.at(i);
  }
  return to_lower_ascii(out);
}

// Lookup keys for a source token: lowercased surface, then lemma.
std::vector<std::string> source_keys(TokenIndex i, const SentencePair& pair) {
  std::vector<std::string> keys{to_lower_ascii(pair.src_tokens.at(i))};
  if (pair.src_ling && i < pair.src_ling->size()) {
    const std::string lemma = to_lower_ascii((*pair.src_ling)[i].lemma);
    if (!lemma.empty() && lemma != keys.front()) keys.push_back(lemma);
  }
  return keys;
}

bool is_negation_word(const std::string& lower) {
  static const std::array<std::string_view, 9> kWords = {
      "not", "n't", "no", "never", "nor", "neither", "none", "nothing", "nobody"};
  return std::find(kWords.begin(), kWords.end(), lower) != kWords.end();
}

}  // namespace

const std::set<std::string>* TermLexicon::lookup(const std::string& key) const {
  const auto it = entries.find(to_lower_ascii(key));
  return it == entries.end() ? nullptr : &it->second;
}

GroupHead group_head_pos(std::span<const TokenIndex> group, const LingSequence& ling) {
  if (group.empty()) throw Error("EMPTY_GROUP", "token group is empty");
  for (TokenIndex i : group) {
    if (i >= ling.size()) {
      throw Error("BAD_INDEX", "token " + std::to_string(i) + " outside a " +
                                   std::to_string(ling.size()) + "-token sentence");
    }
  }
  const auto inside = [&](TokenIndex i) {
    return std::find(group.begin(), group.end(), i) != group.end();
  };
  std::vector<TokenIndex> heads;
  for (TokenIndex i : group) {
    const LingToken& t = ling[i];
    if (t.is_root() || !inside(*t.head)) heads.push_back(i);
  }
  const bool unique = heads.size() == 1;
  const TokenIndex chosen = unique ? heads.front() : group.front();
  return {chosen, ling[chosen].upos, ling[chosen].deprel, !unique};
}

std::optional<std::string> lexical_shift_rule(const AlignedUnit& unit,
                                              const SentencePair& pair) {
  if (!pair.src_ling) return std::nullopt;
  const LingSequence& ling = *pair.src_ling;
  bool plural = false;
  bool tense = false;
  for (TokenIndex i : unit.src) {
    if (i >= ling.size()) continue;
    const LingToken& t = ling[i];
    plural = plural || t.has_feature("Number", "Plur");
    tense = tense || t.has_feature("Tense", "Past") || t.has_feature("VerbForm", "Part");
  }
  if (plural) {
    bool marked = false;
    for (TokenIndex i : unit.tgt) {
      const std::string& t = pair.tgt_tokens.at(i);
      if (t.find("们") != std::string::npos || t.find("些") != std::string::npos) {
        marked = true;
      }
    }
    if (!marked) return "plural";
  }
  if (tense) return "tense";
  return std::nullopt;
}

std::string classify_equivalence(const AlignedUnit& unit, const SentencePair& pair,
                                 const NamedEntitySpans* named_entities,
                                 const FixedExpressionLexicon* fixed_expressions) {
  expect_relation(unit, {RelationLabel::equivalence}, "classify_equivalence");

  if (named_entities) {
    const auto it = named_entities->spans.find(pair.id);
    if (it != named_entities->spans.end()) {
      for (const auto& [first, last] : it->second) {
        for (TokenIndex i : unit.src) {
          if (i >= first && i <= last) return "named_entity";
        }
      }
    }
  }
  if (fixed_expressions && !unit.src.empty() &&
      fixed_expressions->expressions.count(joined_source(unit, pair))) {
    return "fixed_expression";
  }
  if (pair.src_ling && !unit.src.empty() && !unit.tgt.empty()) {
    const GroupHead head = group_head_pos(unit.src, *pair.src_ling);
    std::string target;
    for (TokenIndex i : unit.tgt) target += pair.tgt_tokens.at(i);
    if (head.upos == "ADJ" && han_length(target) == 4) return "adjective";
  }
  return "slight_semantic_change";
}

GeneralizationClass classify_generalization(const AlignedUnit& unit,
                                            const SentencePair& pair,
                                            const HypernymLexicon* hypernyms,
                                            const GlossTable* glosses) {
  expect_relation(unit, {RelationLabel::generalization}, "classify_generalization");

  if (glosses && unit.src.size() >= 2 && unit.tgt.size() < unit.src.size()) {
    const bool covered = std::all_of(unit.tgt.begin(), unit.tgt.end(), [&](TokenIndex t) {
      const std::string& surface = pair.tgt_tokens.at(t);
      return std::any_of(unit.src.begin(), unit.src.end(), [&](TokenIndex s) {
        for (const auto& key : source_keys(s, pair)) {
          const auto* gloss = glosses->lookup(key);
          if (gloss && gloss->count(surface)) return true;
        }
        return false;
      });
    });
    if (covered) return {"short_name", false};
  }
  if (hypernyms) {
    std::string target;
    for (TokenIndex t : unit.tgt) target += pair.tgt_tokens.at(t);
    for (TokenIndex s : unit.src) {
      for (const auto& key : source_keys(s, pair)) {
        const auto* terms = hypernyms->lookup(key);
        if (!terms) continue;
        if (terms->count(target)) return {"hyperonym", false};
        for (TokenIndex t : unit.tgt) {
          if (terms->count(pair.tgt_tokens.at(t))) return {"hyperonym", false};
        }
      }
    }
  }
  return {"hyperonym", true};
}

std::string classify_lexical_shift(const AlignedUnit& unit, const SentencePair& pair) {
  expect_relation(unit, {RelationLabel::lexical_shift}, "classify_lexical_shift");
  need_ling(pair.src_ling, pair, "source");
  auto sub = lexical_shift_rule(unit, pair);
  if (!sub) {
    throw Error("NO_RULE_FIRED", "sentence " + pair.id +
                                     ": no plural or tense feature in the source group");
  }
  return *sub;
}

std::string classify_modulation(const AlignedUnit& unit, const SentencePair& pair) {
  expect_relation(unit, {RelationLabel::modulation}, "classify_modulation");
  const LingSequence& ling = need_ling(pair.src_ling, pair, "source");

  bool passive = false;
  bool be_aux = false;
  bool participle = false;
  bool source_negated = false;
  for (TokenIndex i : unit.src) {
    const LingToken& t = ling.at(i);
    passive = passive || t.has_feature("Voice", "Pass");
    be_aux = be_aux || (to_lower_ascii(t.lemma) == "be" &&
                        (t.upos == "AUX" || t.deprel.starts_with("aux")));
    participle = participle || t.has_feature("VerbForm", "Part");
    source_negated = source_negated || t.has_feature("Polarity", "Neg") ||
                     is_negation_word(to_lower_ascii(t.lemma)) ||
                     is_negation_word(to_lower_ascii(pair.src_tokens.at(i)));
  }
  if ((passive || (be_aux && participle)) && !any_target_token(unit, pair, {"被", "由"})) {
    return "passive_to_active";
  }
  if (!source_negated && any_target_token(unit, pair, {"不", "没", "没有", "未", "非", "不是"})) {
    return "irony";
  }
  return "other";
}

std::string classify_mod_transposition(const AlignedUnit& unit, const SentencePair& pair) {
  expect_relation(unit, {RelationLabel::modulation_transposition},
                  "classify_mod_transposition");
  const LingSequence& ling = need_ling(pair.src_ling, pair, "source");
  return group_head_pos(unit.src, ling).upos == "ADP" ? "proposition" : "other";
}

std::string classify_particularization_pos(const AlignedUnit& unit,
                                           const SentencePair& pair) {
  expect_relation(unit, {RelationLabel::particularization},
                  "classify_particularization_pos");
  const LingSequence& ling = need_ling(pair.src_ling, pair, "source");
  const std::string pos = group_head_pos(unit.src, ling).upos;
  if (pos == "PRON") return "pronoun";
  if (pos == "NOUN" || pos == "PROPN") return "noun";
  if (pos == "VERB" || pos == "AUX") return "verb";
  if (pos == "ADJ" || pos == "ADV") return "adv_adj";
  return "other";
}

PosTransfer transposition_transfer(const AlignedUnit& unit, const SentencePair& pair) {
  expect_relation(unit, {RelationLabel::transposition, RelationLabel::modulation_transposition},
                  "transposition_transfer");
  const LingSequence& src = need_ling(pair.src_ling, pair, "source");
  const LingSequence& tgt = need_ling(pair.tgt_ling, pair, "target");
  return {group_head_pos(unit.src, src).upos, group_head_pos(unit.tgt, tgt).upos};
}

// --- profiles ------------------------------------------------------------------

namespace {

StatTable counts_table(std::string name, std::string row_header,
                       const std::map<std::string, std::size_t>& counts,
                       const std::vector<std::string>& fixed_order) {
  StatTable t;
  t.name = std::move(name);
  t.provenance = t.name;
  t.row_header = std::move(row_header);
  t.columns = {{"count", ColumnKind::count}};
  std::size_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0 && fixed_order.empty()) return t;

  if (!fixed_order.empty()) {
    for (const auto& label : fixed_order) {
      const auto it = counts.find(label);
      t.rows.push_back({label, {double(it == counts.end() ? 0 : it->second)}});
    }
    for (const auto& [label, c] : counts) {
      if (std::find(fixed_order.begin(), fixed_order.end(), label) == fixed_order.end()) {
        t.rows.push_back({label, {double(c)}});
      }
    }
  } else {
    std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(), counts.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [label, c] : sorted) t.rows.push_back({label, {double(c)}});
  }
  t.rows.push_back({"total", {double(total)}});
  return t;
}

}  // namespace

StatTable profile_unaligned(const Corpus& corpus, UnalignedSide side, Facet facet) {
  const RelationLabel relation = side == UnalignedSide::explicitation
                                     ? RelationLabel::unaligned_explicitation
                                     : RelationLabel::unaligned_reduction;
  std::map<std::string, std::size_t> counts;
  for (const auto& s : corpus.sentences) {
    for (const auto& u : s.units) {
      if (u.relation != relation) continue;
      const bool target_side = side == UnalignedSide::explicitation;
      const LingSequence& ling =
          need_ling(target_side ? s.tgt_ling : s.src_ling, s, target_side ? "target" : "source");
      const auto& group = target_side ? u.tgt : u.src;
      const GroupHead head = group_head_pos(group, ling);
      std::string label = facet == Facet::pos ? head.upos : head.deprel;
      if (side == UnalignedSide::reduction && group.size() > 1 && head.ambiguous) {
        label = kMoreThanOneToken;
      }
      if (label.empty()) label = "_";
      ++counts[label];
    }
  }
  StatTable t = counts_table(
      std::string("profile_") + (side == UnalignedSide::explicitation ? "explicitation" : "reduction") +
          (facet == Facet::pos ? "_pos" : "_dep"),
      facet == Facet::pos ? "upos" : "deprel", counts, {});
  return t;
}

StatTable top_k(const StatTable& table, std::size_t k, const std::string& others_label) {
  StatTable out = table;
  out.rows.clear();
  std::optional<StatRow> total;
  std::vector<StatRow> body;
  for (const auto& r : table.rows) {
    if (r.label == "total") {
      total = r;
    } else {
      body.push_back(r);
    }
  }
  if (body.size() <= k) return table;
  StatRow others{others_label, std::vector<std::optional<double>>(table.columns.size(), 0.0)};
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i < k) {
      out.rows.push_back(body[i]);
      continue;
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      *others.values[c] += body[i].values[c].value_or(0.0);
    }
  }
  out.rows.push_back(std::move(others));
  if (total) out.rows.push_back(*total);
  return out;
}

StatTable sub_category_profile(const Corpus& corpus, RelationLabel relation,
                               const SubcatResources& res) {
  std::vector<std::string> order;
  for (auto sub : sub_categories(relation)) order.emplace_back(sub);
  if (relation == RelationLabel::particularization) {
    order = {"pronoun", "noun", "verb", "adv_adj", "other"};
  }
  const bool by_transfer = relation == RelationLabel::transposition;

  std::map<std::string, std::size_t> counts;
  std::size_t low_confidence = 0;
  for (const auto& s : corpus.sentences) {
    for (const auto& u : s.units) {
      if (u.relation != relation) continue;
      if (u.sub && !by_transfer) {
        ++counts[*u.sub];
        continue;
      }
      std::string label;
      try {
        switch (relation) {
          case RelationLabel::equivalence:
            label = classify_equivalence(
                u, s, res.named_entities ? &*res.named_entities : nullptr,
                res.fixed_expressions ? &*res.fixed_expressions : nullptr);
            break;
          case RelationLabel::generalization: {
            const auto g = classify_generalization(u, s, res.hypernyms ? &*res.hypernyms : nullptr,
                                                   res.glosses ? &*res.glosses : nullptr);
            if (g.low_confidence) ++low_confidence;
            label = g.sub;
            break;
          }
          case RelationLabel::lexical_shift:
            label = classify_lexical_shift(u, s);
            break;
          case RelationLabel::modulation:
            label = classify_modulation(u, s);
            break;
          case RelationLabel::modulation_transposition:
            label = classify_mod_transposition(u, s);
            break;
          case RelationLabel::particularization:
            label = classify_particularization_pos(u, s);
            break;
          case RelationLabel::transposition:
            label = transposition_transfer(u, s).label();
            break;
          default:
            throw Error("NO_CLASSIFIER", "relation " + std::string(to_string(relation)) +
                                             " has no sub-category analysis");
        }
      } catch (const Error& e) {
        if (e.code() == "NO_CLASSIFIER") throw;
        label = "unclassified";
      }
      ++counts[label];
    }
  }

  StatTable t = counts_table("sub_categories_" + std::string(to_string(relation)),
                             "sub_category", counts, order);
  t.provenance = "sub_category_profile(" + corpus.name + ", " +
                 std::string(to_string(relation)) + ")";
  std::size_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0) {
    t.notes.push_back("no " + std::string(to_string(relation)) + " units");
  }
  if (counts.count("unclassified")) {
    t.notes.push_back(std::to_string(counts["unclassified"]) +
                      " unit(s) could not be classified (missing features or annotation)");
  }
  if (low_confidence > 0) {
    t.notes.push_back(std::to_string(low_confidence) +
                      " generalization unit(s) defaulted to hyperonym without lexicon support");
  }
  return t;
}

}  // namespace transrel
