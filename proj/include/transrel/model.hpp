#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transrel/relation.hpp"

namespace transrel {

using TokenIndex = std::size_t;
using IndexSet = std::vector<TokenIndex>;  // sorted ascending, no duplicates

/// The nine genres of the original corpus, in report order.
inline const std::vector<std::string>& predefined_genres() {
  static const std::vector<std::string> genres = {
      "education", "laws",     "microblog",         "news",     "officialDoc",
      "science",   "scientificArticle", "spoken", "subtitles"};
  return genres;
}

inline constexpr const char* kUnknownGenre = "unknown";

/// Per-token linguistic annotation taken from CoNLL-U.
struct LingToken {
  std::string form;
  std::string lemma;
  std::string upos;
  std::map<std::string, std::string> feats;
  std::optional<TokenIndex> head;  // nullopt is ROOT
  std::string deprel;

  bool is_root() const noexcept { return !head.has_value(); }
  bool has_feature(const std::string& key, const std::string& value) const {
    const auto it = feats.find(key);
    return it != feats.end() && it->second == value;
  }

  friend bool operator==(const LingToken&, const LingToken&) = default;
};

using LingSequence = std::vector<LingToken>;

/// One annotation unit: a source token group linked to a target token group.
struct AlignedUnit {
  IndexSet src;
  IndexSet tgt;
  RelationLabel relation = RelationLabel::literal;
  std::optional<std::string> sub;
  Provenance provenance = Provenance::manual;

  friend bool operator==(const AlignedUnit&, const AlignedUnit&) = default;
};

struct SentencePair {
  std::string id;
  std::string genre = kUnknownGenre;
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;
  std::vector<AlignedUnit> units;
  std::optional<LingSequence> src_ling;
  std::optional<LingSequence> tgt_ling;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct Corpus {
  std::string name;
  std::vector<SentencePair> sentences;

  const SentencePair* find(const std::string& id) const;
  SentencePair* find(const std::string& id);
};

/// Sentence id for the k-th (0-based) line of a corpus: "s1", "s2", ...
std::string sentence_id(std::size_t zero_based);

/// Units sorted by their first source index, then first target index;
/// target-only units sort after every unit with source tokens.
void sort_units(std::vector<AlignedUnit>& units);

/// Genre names present in the corpus: predefined genres first in their
/// canonical order, then the rest alphabetically.
std::vector<std::string> genres_in(const Corpus& corpus);

}  // namespace transrel
