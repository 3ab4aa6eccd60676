#include "transrel/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

#include "transrel/error.hpp"
#include "transrel/text.hpp"

namespace transrel {

namespace {

using ordered_json = nlohmann::ordered_json;

// Whole-string non-negative decimal integer.
bool parse_index(std::string_view text, TokenIndex& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

// --- tokenized text ----------------------------------------------------------

Parsed<TokenizedText> parse_tokenized(std::string_view text) {
  if (text.empty()) throw ParseError("EMPTY_FILE", 1, 0, "no sentences");
  Parsed<TokenizedText> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    std::string_view line = lines[n];
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
      out.warnings.push_back({lineno, "stripped carriage return"});
    }
    std::vector<std::string> tokens;
    bool repaired = false;
    for (std::string_view piece : split(line, ' ')) {
      if (piece.empty()) {
        repaired = true;
        continue;
      }
      tokens.emplace_back(piece);
    }
    if (tokens.empty()) throw ParseError("EMPTY_LINE", lineno, 0, "blank sentence");
    if (repaired) {
      out.warnings.push_back({lineno, "collapsed irregular spacing"});
    }
    out.value.push_back(std::move(tokens));
  }
  return out;
}

std::string serialize_tokenized(const TokenizedText& sentences) {
  std::string out;
  for (const auto& tokens : sentences) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out += ' ';
      out += tokens[i];
    }
    out += '\n';
  }
  return out;
}

// --- alignment ---------------------------------------------------------------

AlignmentEdgeList parse_alignment(std::string_view text) {
  AlignmentEdgeList out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    SentenceEdges edges;
    std::set<AlignmentEdge> seen;
    std::size_t item = 0;
    for (std::string_view piece : split(strip_cr(lines[n]), ' ')) {
      if (piece.empty()) continue;
      ++item;
      const auto dash = piece.find('-');
      AlignmentEdge edge;
      if (dash == std::string_view::npos ||
          !parse_index(piece.substr(0, dash), edge.src) ||
          !parse_index(piece.substr(dash + 1), edge.tgt)) {
        throw ParseError("MALFORMED_EDGE", lineno, item,
                         "expected i-j, got '" + std::string(piece) + "'");
      }
      if (!seen.insert(edge).second) {
        throw ParseError("DUPLICATE_EDGE", lineno, item,
                         "edge " + std::string(piece) + " repeated");
      }
      edges.push_back(edge);
    }
    out.push_back(std::move(edges));
  }
  return out;
}

std::string serialize_alignment(const AlignmentEdgeList& edges) {
  std::string out;
  for (const auto& sentence : edges) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(sentence[i].src) + '-' + std::to_string(sentence[i].tgt);
    }
    out += '\n';
  }
  return out;
}

// --- annotation records --------------------------------------------------------

namespace {

IndexSet read_indices(const ordered_json& value, std::size_t lineno,
                      const char* key) {
  if (!value.is_array()) {
    throw ParseError("BAD_INDEX", lineno, 0,
                     std::string("'") + key + "' must be an array of indices");
  }
  IndexSet out;
  for (const auto& v : value) {
    if (!v.is_number_unsigned()) {
      throw ParseError("BAD_INDEX", lineno, 0,
                       std::string("'") + key + "' holds " + v.dump() +
                           ", not a non-negative integer");
    }
    out.push_back(v.get<TokenIndex>());
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ParseError("BAD_INDEX", lineno, 0,
                     std::string("'") + key + "' repeats an index");
  }
  return out;
}

std::string read_string(const ordered_json& record, const char* key,
                        std::size_t lineno) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw ParseError("MALFORMED_RECORD", lineno, 0,
                     std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

Parsed<AnnotationSet> parse_annotations(std::string_view text) {
  static const std::set<std::string> kKnownKeys = {"id",  "src", "tgt",
                                                   "relation", "sub",
                                                   "provenance"};
  Parsed<AnnotationSet> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    const std::string_view line = trim(lines[n]);
    if (line.empty()) {
      out.warnings.push_back({lineno, "skipped blank line"});
      continue;
    }
    ordered_json record;
    try {
      record = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("MALFORMED_RECORD", lineno, 0, e.what());
    }
    if (!record.is_object()) {
      throw ParseError("MALFORMED_RECORD", lineno, 0, "record is not an object");
    }
    for (const auto& [key, _] : record.items()) {
      if (!kKnownKeys.count(key)) {
        out.warnings.push_back({lineno, "ignored unknown key '" + key + "'"});
      }
    }

    const std::string id = std::string(trim(read_string(record, "id", lineno)));
    if (id.empty()) throw ParseError("MALFORMED_RECORD", lineno, 0, "empty id");
    if (!record.contains("src") || !record.contains("tgt")) {
      throw ParseError("MALFORMED_RECORD", lineno, 0, "missing 'src' or 'tgt'");
    }

    AlignedUnit unit;
    unit.src = read_indices(record["src"], lineno, "src");
    unit.tgt = read_indices(record["tgt"], lineno, "tgt");
    try {
      unit.relation = parse_relation(read_string(record, "relation", lineno));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.code(), lineno, 0, e.what());
    }
    if (record.contains("sub") && !record["sub"].is_null()) {
      const std::string sub = std::string(trim(read_string(record, "sub", lineno)));
      if (!is_valid_sub_category(unit.relation, sub)) {
        throw ParseError("SUB_TAG_MISMATCH", lineno, 0,
                         "'" + sub + "' is not a sub-category of " +
                             std::string(to_string(unit.relation)));
      }
      unit.sub = sub;
    }
    if (record.contains("provenance")) {
      try {
        unit.provenance = parse_provenance(read_string(record, "provenance", lineno));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.code(), lineno, 0, e.what());
      }
    }

    auto [it, inserted] = out.value.units.try_emplace(id);
    if (inserted) out.value.sentence_order.push_back(id);
    it->second.push_back(std::move(unit));
  }
  return out;
}

std::string serialize_unit(const std::string& sentence_id, const AlignedUnit& unit) {
  ordered_json record;
  record["id"] = sentence_id;
  record["src"] = unit.src;
  record["tgt"] = unit.tgt;
  record["relation"] = std::string(to_string(unit.relation));
  if (unit.sub) record["sub"] = *unit.sub;
  if (unit.provenance != Provenance::manual) {
    record["provenance"] = std::string(to_string(unit.provenance));
  }
  return record.dump();
}

std::string serialize_annotations(const Corpus& corpus) {
  std::string out;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& unit : sentence.units) {
      out += serialize_unit(sentence.id, unit);
      out += '\n';
    }
  }
  return out;
}

// --- CoNLL-U -------------------------------------------------------------------

namespace {

std::string conllu_field(std::string_view field) {
  return field == "_" ? std::string() : std::string(field);
}

}  // namespace

Parsed<std::vector<LingSequence>> parse_conllu(std::string_view text) {
  Parsed<std::vector<LingSequence>> out;
  LingSequence current;
  bool open = false;
  const auto close = [&] {
    if (open) out.value.push_back(std::move(current));
    current.clear();
    open = false;
  };

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    const std::string_view line = strip_cr(lines[n]);
    if (trim(line).empty()) {
      close();
      continue;
    }
    if (line.front() == '#') continue;

    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("COLUMN_COUNT", lineno, 0,
                       "expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()));
    }
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos) {
      out.warnings.push_back({lineno, "skipped multiword token " + std::string(id)});
      continue;
    }
    if (id.find('.') != std::string_view::npos) {
      out.warnings.push_back({lineno, "skipped empty node " + std::string(id)});
      continue;
    }
    TokenIndex position = 0;
    if (!parse_index(id, position) || position != current.size() + 1) {
      throw ParseError("BAD_ID", lineno, 0,
                       "expected token id " + std::to_string(current.size() + 1) +
                           ", found '" + std::string(id) + "'");
    }

    LingToken token;
    token.form = std::string(cols[1]);
    token.lemma = conllu_field(cols[2]);
    token.upos = conllu_field(cols[3]);
    if (cols[5] != "_") {
      for (std::string_view feat : split(cols[5], '|')) {
        const auto eq = feat.find('=');
        if (eq == std::string_view::npos) {
          out.warnings.push_back(
              {lineno, "ignored feature without '=': " + std::string(feat)});
          continue;
        }
        token.feats[std::string(feat.substr(0, eq))] = std::string(feat.substr(eq + 1));
      }
    }
    TokenIndex head = 0;
    if (!parse_index(cols[6], head)) {
      throw ParseError("NONNUMERIC_HEAD", lineno, 0,
                       "head '" + std::string(cols[6]) + "' is not a number");
    }
    if (head > 0) token.head = head - 1;
    token.deprel = conllu_field(cols[7]);

    current.push_back(std::move(token));
    open = true;
  }
  close();
  return out;
}

std::string serialize_conllu(const std::vector<LingSequence>& sentences) {
  const auto field = [](const std::string& s) { return s.empty() ? std::string("_") : s; };
  std::string out;
  for (const auto& sentence : sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const LingToken& t = sentence[i];
      std::string feats;
      for (const auto& [k, v] : t.feats) {
        if (!feats.empty()) feats += '|';
        feats += k + '=' + v;
      }
      out += std::to_string(i + 1) + '\t' + t.form + '\t' + field(t.lemma) + '\t' +
             field(t.upos) + "\t_\t" + field(feats) + '\t' +
             std::to_string(t.head ? *t.head + 1 : 0) + '\t' + field(t.deprel) +
             "\t_\t_\n";
    }
    out += '\n';
  }
  return out;
}

}  // namespace transrel
