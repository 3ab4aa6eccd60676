#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "transrel/model.hpp"

namespace transrel {

/// A repaired or skipped input line. Parsers never drop input silently:
/// every line they alter or ignore yields one of these.
struct Warning {
  std::size_t line = 0;  // 1-based
  std::string message;
};

template <typename T>
struct Parsed {
  T value;
  std::vector<Warning> warnings;
};

// --- tokenized text: one sentence per line, tokens separated by spaces ------

using TokenizedText = std::vector<std::vector<std::string>>;

/// Errors: EMPTY_FILE, EMPTY_LINE. Runs of spaces, leading/trailing spaces and
/// a trailing '\r' are repaired with a warning.
Parsed<TokenizedText> parse_tokenized(std::string_view text);
std::string serialize_tokenized(const TokenizedText& sentences);

// --- alignment: one line per sentence of space-separated "i-j" items --------

struct AlignmentEdge {
  TokenIndex src = 0;
  TokenIndex tgt = 0;
  friend auto operator<=>(const AlignmentEdge&, const AlignmentEdge&) = default;
};

using SentenceEdges = std::vector<AlignmentEdge>;
using AlignmentEdgeList = std::vector<SentenceEdges>;

/// Errors: MALFORMED_EDGE, DUPLICATE_EDGE (both report line and item).
AlignmentEdgeList parse_alignment(std::string_view text);
std::string serialize_alignment(const AlignmentEdgeList& edges);

// --- annotation records: one JSON object per line ---------------------------
//
//   {"id":"s1","src":[12,13,14],"tgt":[13,14],"relation":"generalization"}
//
// Optional keys: "sub" (sub-category) and "provenance" ("manual" default,
// or "suggested"). Records of one sentence keep their file order.

struct AnnotationSet {
  std::vector<std::string> sentence_order;  // first-seen order of ids
  std::map<std::string, std::vector<AlignedUnit>> units;
};

/// Errors: MALFORMED_RECORD, UNKNOWN_RELATION, BAD_INDEX, SUB_TAG_MISMATCH,
/// BAD_PROVENANCE. Blank lines and unknown keys are skipped with a warning.
Parsed<AnnotationSet> parse_annotations(std::string_view text);

std::string serialize_unit(const std::string& sentence_id, const AlignedUnit& unit);
std::string serialize_annotations(const Corpus& corpus);

// --- CoNLL-U -----------------------------------------------------------------

/// Errors: COLUMN_COUNT, NONNUMERIC_HEAD, BAD_ID. Multiword-token ranges and
/// empty nodes are skipped with a warning.
Parsed<std::vector<LingSequence>> parse_conllu(std::string_view text);
std::string serialize_conllu(const std::vector<LingSequence>& sentences);

}  // namespace transrel
