#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace transrel {

/// The closed 14-way translation-relation taxonomy.
enum class RelationLabel {
  literal,
  equivalence,
  generalization,
  particularization,
  modulation,
  transposition,
  modulation_transposition,
  figurative,
  lexical_shift,
  translation_error,
  uncertain,
  no_type,
  unaligned_explicitation,
  unaligned_reduction,
};

inline constexpr std::size_t kRelationCount = 14;

inline constexpr std::array<RelationLabel, kRelationCount> kAllRelations = {
    RelationLabel::literal,
    RelationLabel::equivalence,
    RelationLabel::generalization,
    RelationLabel::particularization,
    RelationLabel::modulation,
    RelationLabel::transposition,
    RelationLabel::modulation_transposition,
    RelationLabel::figurative,
    RelationLabel::lexical_shift,
    RelationLabel::translation_error,
    RelationLabel::uncertain,
    RelationLabel::no_type,
    RelationLabel::unaligned_explicitation,
    RelationLabel::unaligned_reduction,
};

/// Canonical snake_case name used in every file and report.
std::string_view to_string(RelationLabel label) noexcept;

/// Parses a canonical name. Surrounding whitespace is trimmed; anything else
/// that is not one of the 14 names throws Error("UNKNOWN_RELATION").
RelationLabel parse_relation(std::string_view text);

constexpr std::size_t index_of(RelationLabel label) noexcept {
  return static_cast<std::size_t>(label);
}

constexpr bool is_literal(RelationLabel label) noexcept {
  return label == RelationLabel::literal;
}

/// Who set a unit's label: a human annotator or a pre-annotation rule.
enum class Provenance { manual, suggested };

std::string_view to_string(Provenance provenance) noexcept;
Provenance parse_provenance(std::string_view text);

/// Sub-category vocabulary for a relation; empty for relations without one.
std::span<const std::string_view> sub_categories(RelationLabel label) noexcept;

bool is_valid_sub_category(RelationLabel label, std::string_view sub) noexcept;

}  // namespace transrel
