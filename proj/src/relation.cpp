#include "transrel/relation.hpp"

#include <algorithm>

#include "transrel/error.hpp"
#include "transrel/text.hpp"

namespace transrel {

namespace {

constexpr std::array<std::string_view, kRelationCount> kNames = {
    "literal",
    "equivalence",
    "generalization",
    "particularization",
    "modulation",
    "transposition",
    "modulation_transposition",
    "figurative",
    "lexical_shift",
    "translation_error",
    "uncertain",
    "no_type",
    "unaligned_explicitation",
    "unaligned_reduction",
};

constexpr std::array<std::string_view, 5> kEquivalenceSubs = {
    "slight_semantic_change", "named_entity", "fixed_expression", "adjective",
    "refined"};
constexpr std::array<std::string_view, 2> kLexicalShiftSubs = {"plural",
                                                               "tense"};
constexpr std::array<std::string_view, 2> kGeneralizationSubs = {"short_name",
                                                                 "hyperonym"};
constexpr std::array<std::string_view, 3> kModulationSubs = {
    "passive_to_active", "irony", "other"};
constexpr std::array<std::string_view, 2> kModTranspositionSubs = {
    "proposition", "other"};

}  // namespace

std::string_view to_string(RelationLabel label) noexcept {
  return kNames[index_of(label)];
}

RelationLabel parse_relation(std::string_view text) {
  const std::string_view name = trim(text);
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) {
    throw Error("UNKNOWN_RELATION",
                "'" + std::string(text) + "' is not a translation relation");
  }
  return kAllRelations[static_cast<std::size_t>(it - kNames.begin())];
}

std::string_view to_string(Provenance provenance) noexcept {
  return provenance == Provenance::manual ? "manual" : "suggested";
}

Provenance parse_provenance(std::string_view text) {
  const std::string_view name = trim(text);
  if (name == "manual") return Provenance::manual;
  if (name == "suggested") return Provenance::suggested;
  throw Error("BAD_PROVENANCE",
              "'" + std::string(text) + "' is not manual|suggested");
}

std::span<const std::string_view> sub_categories(RelationLabel label) noexcept {
  switch (label) {
    case RelationLabel::equivalence:
      return kEquivalenceSubs;
    case RelationLabel::lexical_shift:
      return kLexicalShiftSubs;
    case RelationLabel::generalization:
      return kGeneralizationSubs;
    case RelationLabel::modulation:
      return kModulationSubs;
    case RelationLabel::modulation_transposition:
      return kModTranspositionSubs;
    default:
      return {};
  }
}

bool is_valid_sub_category(RelationLabel label, std::string_view sub) noexcept {
  const auto subs = sub_categories(label);
  return std::find(subs.begin(), subs.end(), sub) != subs.end();
}

}  // namespace transrel
