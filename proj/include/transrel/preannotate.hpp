#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transrel/ingest.hpp"
#include "transrel/model.hpp"

namespace transrel {

enum class Confidence { rule_certain, rule_heuristic };

std::string_view to_string(Confidence confidence) noexcept;

/// A proposed unit; the unit always carries Provenance::suggested.
struct Suggestion {
  AlignedUnit unit;
  Confidence confidence = Confidence::rule_heuristic;
  std::string rule_id;

  friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

/// Connected components of the bipartite edge graph as literal units, sorted.
/// Tokens in no edge are left out. Error BAD_INDEX for out-of-range edges.
std::vector<AlignedUnit> group_edges(const SentenceEdges& edges, std::size_t src_len,
                                     std::size_t tgt_len);

/// One unaligned_reduction suggestion per maximal run of source indices not
/// covered by `units`, then one unaligned_explicitation per uncovered target run.
std::vector<Suggestion> suggest_unaligned(const SentencePair& sentence,
                                          const std::vector<AlignedUnit>& units);

/// nullopt when the sentence has no source linguistic layer or no rule fires.
std::optional<Suggestion> suggest_lexical_shift(const AlignedUnit& unit,
                                                const SentencePair& sentence);

/// nullopt unless both linguistic layers exist and the head-POS transfer is
/// on the whitelist.
std::optional<Suggestion> suggest_transposition(const AlignedUnit& unit,
                                                const SentencePair& sentence);

/// Fallback when no aligner output exists: source token i links to target
/// token floor(i * tgt_len / src_len), the identity for equal lengths.
SentenceEdges diagonal_edges(std::size_t src_len, std::size_t tgt_len);

bool is_whitelisted_transfer(std::string_view src_pos, std::string_view tgt_pos) noexcept;

struct Preannotation {
  SentencePair draft;                   // units replaced by the suggested ones
  std::vector<Suggestion> suggestions;  // every non-default suggestion
};

/// Literal units from the edges, overridden by unaligned > lexical_shift >
/// transposition suggestions. Existing units of `sentence` are ignored.
Preannotation preannotate_sentence(const SentencePair& sentence, const SentenceEdges& edges);

/// Suggestions still relevant to a sentence being edited. With no units yet,
/// the full pre-annotation (default literal groups included, rule
/// "default.literal"). Otherwise the uncovered runs plus lexical-shift and
/// transposition suggestions for literal units that are themselves still
/// suggestions; human-confirmed units are never second-guessed.
std::vector<Suggestion> suggestion_delta(const SentencePair& current,
                                         const SentenceEdges& edges);

}  // namespace transrel
