#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transrel/model.hpp"

namespace transrel {

/// complete: every token covered exactly once. draft: at most once.
enum class ValidationMode { draft, complete };

enum class Side { sentence, source, target };

std::string_view to_string(Side side) noexcept;

/// Where a violation sits. Sentence-level problems have neither index set.
struct Locus {
  Side side = Side::sentence;
  std::optional<TokenIndex> token;
  std::optional<std::size_t> unit;

  friend bool operator==(const Locus&, const Locus&) = default;
};

/// Violation codes:
///   EMPTY_UNIT           unit with neither source nor target tokens
///   BAD_UNALIGNED_LABEL  one-sided unit whose label does not fit the side
///   BAD_INDEX            index outside the sentence
///   DUPLICATE_INDEX      same index listed twice inside one unit
///   OVERLAP              token claimed by more than one unit
///   UNCOVERED            token in no unit (complete mode only)
///   SUB_TAG_MISMATCH     sub-category not defined for the unit's relation
///   BAD_TOKEN            empty token or token containing whitespace
///   LING_LENGTH          linguistic layer not 1:1 with the tokens
///   BAD_HEAD             dependency head out of range or self-referencing
///   ROOT_COUNT           dependency layer without exactly one root
struct Violation {
  std::string code;
  Locus locus;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool contains(const std::string& code) const;
};

/// Checks every structural invariant of a sentence pair. Violations come back
/// ordered by locus (sentence level, then source tokens, then target tokens;
/// unit-only loci order by unit within their side).
ValidationReport validate(const SentencePair& pair, ValidationMode mode);

/// Relation of each source token, by position. Throws Error("INCOMPLETE")
/// when some source token belongs to no unit.
std::vector<RelationLabel> project_source_relations(const SentencePair& pair);

}  // namespace transrel
