#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "transrel/model.hpp"
#include "transrel/stat_table.hpp"

namespace transrel {

// --- optional external resources ---------------------------------------------

/// Named-entity spans per sentence: inclusive source index ranges.
/// File format: "<sentence-id>\t<first>-<last>[,<first>-<last>...]".
struct NamedEntitySpans {
  std::map<std::string, std::vector<std::pair<TokenIndex, TokenIndex>>> spans;
};

/// Fixed expressions, one per line; matched case-insensitively against the
/// space-joined source surfaces of a unit.
struct FixedExpressionLexicon {
  std::set<std::string> expressions;
};

/// "<lemma>\t<term>[\t<term>...]" lines; keys are lowercased. Used for both
/// the hyperonym lexicon and the literal-gloss table.
struct TermLexicon {
  std::map<std::string, std::set<std::string>> entries;

  const std::set<std::string>* lookup(const std::string& key) const;
};

using HypernymLexicon = TermLexicon;
using GlossTable = TermLexicon;

NamedEntitySpans parse_named_entity_spans(std::string_view text);
FixedExpressionLexicon parse_fixed_expressions(std::string_view text);
TermLexicon parse_term_lexicon(std::string_view text);

struct SubcatResources {
  std::optional<NamedEntitySpans> named_entities;
  std::optional<FixedExpressionLexicon> fixed_expressions;
  std::optional<HypernymLexicon> hypernyms;
  std::optional<GlossTable> glosses;
};

// --- head of a token group -----------------------------------------------------

struct GroupHead {
  TokenIndex token = 0;
  std::string upos;
  std::string deprel;
  bool ambiguous = false;  // zero or several tokens with an external head
};

/// The group's syntactic head is its unique token whose dependency head is
/// ROOT or lies outside the group. With zero or several such tokens the first
/// token is returned and flagged ambiguous. Errors: EMPTY_GROUP, BAD_INDEX.
GroupHead group_head_pos(std::span<const TokenIndex> group, const LingSequence& ling);

// --- classifiers ---------------------------------------------------------------
//
// Each classifier accepts only units of its relation (Error "WRONG_RELATION")
// and needs the linguistic layers it reads (Error "MISSING_LING").

/// The plural/tense rule shared with pre-annotation. nullopt when neither
/// fires; plural wins when both do.
std::optional<std::string> lexical_shift_rule(const AlignedUnit& unit,
                                              const SentencePair& pair);

std::string classify_equivalence(const AlignedUnit& unit, const SentencePair& pair,
                                 const NamedEntitySpans* named_entities,
                                 const FixedExpressionLexicon* fixed_expressions);

struct GeneralizationClass {
  std::string sub;  // short_name | hyperonym
  bool low_confidence = false;
};

GeneralizationClass classify_generalization(const AlignedUnit& unit,
                                            const SentencePair& pair,
                                            const HypernymLexicon* hypernyms,
                                            const GlossTable* glosses);

/// Error "NO_RULE_FIRED" when neither plural nor tense evidence is present.
std::string classify_lexical_shift(const AlignedUnit& unit, const SentencePair& pair);

std::string classify_modulation(const AlignedUnit& unit, const SentencePair& pair);

std::string classify_mod_transposition(const AlignedUnit& unit, const SentencePair& pair);

/// pronoun | noun | verb | adv_adj | other
std::string classify_particularization_pos(const AlignedUnit& unit,
                                           const SentencePair& pair);

struct PosTransfer {
  std::string src_pos;
  std::string tgt_pos;

  bool unusual() const { return src_pos == tgt_pos; }
  std::string label() const { return src_pos + "->" + tgt_pos; }
  friend bool operator==(const PosTransfer&, const PosTransfer&) = default;
};

/// For transposition and modulation_transposition units.
PosTransfer transposition_transfer(const AlignedUnit& unit, const SentencePair& pair);

// --- corpus profiles -----------------------------------------------------------

enum class UnalignedSide { explicitation, reduction };
enum class Facet { pos, dep };

inline constexpr const char* kMoreThanOneToken = "More than one token";

/// Units of one unaligned kind counted by group-head POS or deprel, sorted by
/// count descending then label, followed by a "total" row. Ambiguous
/// multi-token reduction groups count under "More than one token".
StatTable profile_unaligned(const Corpus& corpus, UnalignedSide side, Facet facet);

/// Keeps the first k non-total rows and folds the rest into `others_label`.
StatTable top_k(const StatTable& table, std::size_t k,
                const std::string& others_label = "others");

/// Sub-category counts for one relation. Units that already carry a
/// sub-category keep it; the rest go through the relation's classifier.
/// Units a classifier cannot decide count under "unclassified", so the
/// total always equals the relation's unit count.
StatTable sub_category_profile(const Corpus& corpus, RelationLabel relation,
                               const SubcatResources& resources);

}  // namespace transrel
