#include <string>

#include "transrel/error.hpp"
#include "transrel/subcat.hpp"
#include "transrel/text.hpp"

namespace transrel {

namespace {

std::size_t parse_index(std::string_view text, std::size_t line, std::size_t item) {
  const std::string s(trim(text));
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("MALFORMED_RESOURCE", line, item, "'" + s + "' is not a token index");
  }
  return std::stoul(s);
}

std::string normalize_expression(std::string_view text) {
  std::string out;
  for (const auto& word : split(trim(text), ' ')) {
    const auto w = trim(word);
    if (w.empty()) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return to_lower_ascii(out);
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

NamedEntitySpans parse_named_entity_spans(std::string_view text) {
  NamedEntitySpans out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (skippable(lines[n])) continue;
    const auto fields = split(lines[n], '\t');
    if (fields.size() != 2) {
      throw ParseError("MALFORMED_RESOURCE", n + 1, 0,
                       "expected '<sentence-id>\\t<first>-<last>[,...]'");
    }
    auto& spans = out.spans[std::string(trim(fields[0]))];
    const auto ranges = split(fields[1], ',');
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      const auto bounds = split(ranges[r], '-');
      if (bounds.size() > 2) {
        throw ParseError("MALFORMED_RESOURCE", n + 1, r + 1, "bad range '" +
                                                                 std::string(ranges[r]) + "'");
      }
      const auto first = parse_index(bounds[0], n + 1, r + 1);
      const auto last = bounds.size() == 2 ? parse_index(bounds[1], n + 1, r + 1) : first;
      if (last < first) {
        throw ParseError("MALFORMED_RESOURCE", n + 1, r + 1, "range end precedes start");
      }
      spans.emplace_back(first, last);
    }
  }
  return out;
}

FixedExpressionLexicon parse_fixed_expressions(std::string_view text) {
  FixedExpressionLexicon out;
  for (const auto& line : split_lines(text)) {
    if (skippable(line)) continue;
    out.expressions.insert(normalize_expression(line));
  }
  return out;
}

TermLexicon parse_term_lexicon(std::string_view text) {
  TermLexicon out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (skippable(lines[n])) continue;
    const auto fields = split(lines[n], '\t');
    if (fields.size() < 2) {
      throw ParseError("MALFORMED_RESOURCE", n + 1, 0, "expected '<lemma>\\t<term>[\\t...]'");
    }
    auto& terms = out.entries[to_lower_ascii(std::string(trim(fields[0])))];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto term = trim(fields[i]);
      if (!term.empty()) terms.insert(std::string(term));
    }
  }
  return out;
}

}  // namespace transrel
