#include "transrel/validate.hpp"

#include <algorithm>
#include <tuple>

#include "transrel/error.hpp"

namespace transrel {

namespace {

std::string side_name(Side side) { return std::string(to_string(side)); }

class Checker {
 public:
  Checker(const SentencePair& pair, ValidationMode mode)
      : pair_(pair), mode_(mode) {}

  ValidationReport run() {
    check_tokens(Side::source, pair_.src_tokens);
    check_tokens(Side::target, pair_.tgt_tokens);
    for (std::size_t u = 0; u < pair_.units.size(); ++u) check_unit(u);
    check_coverage(Side::source, pair_.src_tokens.size());
    check_coverage(Side::target, pair_.tgt_tokens.size());
    if (pair_.src_ling) check_ling(Side::source, *pair_.src_ling, pair_.src_tokens.size());
    if (pair_.tgt_ling) check_ling(Side::target, *pair_.tgt_ling, pair_.tgt_tokens.size());

    const auto key = [](const Violation& v) {
      return std::make_tuple(static_cast<int>(v.locus.side),
                             v.locus.token.has_value(), v.locus.token.value_or(0),
                             v.locus.unit.has_value(), v.locus.unit.value_or(0),
                             v.code);
    };
    std::stable_sort(report_.violations.begin(), report_.violations.end(),
                     [&](const Violation& a, const Violation& b) {
                       return key(a) < key(b);
                     });
    return std::move(report_);
  }

 private:
  void add(std::string code, Locus locus, std::string message) {
    report_.violations.push_back({std::move(code), locus, std::move(message)});
  }

  void check_tokens(Side side, const std::vector<std::string>& tokens) {
    for (TokenIndex i = 0; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      const bool blank = t.empty();
      const bool spaced = t.find_first_of(" \t\r\n") != std::string::npos;
      if (blank || spaced) {
        add("BAD_TOKEN", {side, i, std::nullopt},
            side_name(side) + " token " + std::to_string(i) +
                (blank ? " is empty" : " contains whitespace"));
      }
    }
  }

  void check_indices(std::size_t u, Side side, const IndexSet& indices,
                     std::size_t length) {
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const TokenIndex i = indices[k];
      if (i >= length) {
        add("BAD_INDEX", {side, i, u},
            "unit " + std::to_string(u) + " references " + side_name(side) +
                " index " + std::to_string(i) + " of a " +
                std::to_string(length) + "-token sentence");
        continue;
      }
      if (std::find(indices.begin(), indices.begin() + static_cast<long>(k), i) !=
          indices.begin() + static_cast<long>(k)) {
        add("DUPLICATE_INDEX", {side, i, u},
            "unit " + std::to_string(u) + " lists " + side_name(side) +
                " index " + std::to_string(i) + " twice");
      }
    }
  }

  void check_unit(std::size_t u) {
    const AlignedUnit& unit = pair_.units[u];
    const Locus here{Side::sentence, std::nullopt, u};
    const std::string name = "unit " + std::to_string(u);
    const auto label = std::string(to_string(unit.relation));

    if (unit.src.empty() && unit.tgt.empty()) {
      add("EMPTY_UNIT", here, name + " has no tokens on either side");
    } else if (unit.tgt.empty() && unit.relation != RelationLabel::unaligned_reduction &&
               unit.relation != RelationLabel::no_type) {
      add("BAD_UNALIGNED_LABEL", here,
          name + " has no target tokens but is labeled " + label);
    } else if (unit.src.empty() &&
               unit.relation != RelationLabel::unaligned_explicitation) {
      add("BAD_UNALIGNED_LABEL", here,
          name + " has no source tokens but is labeled " + label);
    } else if (unit.relation == RelationLabel::unaligned_explicitation &&
               !unit.src.empty()) {
      add("BAD_UNALIGNED_LABEL", here,
          name + " is unaligned_explicitation but has source tokens");
    } else if (unit.relation == RelationLabel::unaligned_reduction &&
               !unit.tgt.empty()) {
      add("BAD_UNALIGNED_LABEL", here,
          name + " is unaligned_reduction but has target tokens");
    }

    if (unit.sub && !is_valid_sub_category(unit.relation, *unit.sub)) {
      add("SUB_TAG_MISMATCH", here,
          name + " sub-category '" + *unit.sub + "' does not belong to " + label);
    }

    check_indices(u, Side::source, unit.src, pair_.src_tokens.size());
    check_indices(u, Side::target, unit.tgt, pair_.tgt_tokens.size());
  }

  void check_coverage(Side side, std::size_t length) {
    std::vector<std::optional<std::size_t>> owner(length);
    for (std::size_t u = 0; u < pair_.units.size(); ++u) {
      const auto& indices =
          side == Side::source ? pair_.units[u].src : pair_.units[u].tgt;
      IndexSet seen;
      for (TokenIndex i : indices) {
        if (i >= length) continue;
        if (std::find(seen.begin(), seen.end(), i) != seen.end()) continue;
        seen.push_back(i);
        if (owner[i]) {
          add("OVERLAP", {side, i, u},
              side_name(side) + " token " + std::to_string(i) +
                  " is in unit " + std::to_string(*owner[i]) + " and unit " +
                  std::to_string(u));
        } else {
          owner[i] = u;
        }
      }
    }
    if (mode_ != ValidationMode::complete) return;
    for (TokenIndex i = 0; i < length; ++i) {
      if (!owner[i]) {
        add("UNCOVERED", {side, i, std::nullopt},
            side_name(side) + " token " + std::to_string(i) + " is in no unit");
      }
    }
  }

  void check_ling(Side side, const LingSequence& ling, std::size_t length) {
    if (ling.size() != length) {
      add("LING_LENGTH", {side, std::nullopt, std::nullopt},
          side_name(side) + " has " + std::to_string(length) + " tokens but " +
              std::to_string(ling.size()) + " linguistic annotations");
      return;
    }
    std::size_t roots = 0;
    for (TokenIndex i = 0; i < ling.size(); ++i) {
      if (ling[i].is_root()) {
        ++roots;
      } else if (*ling[i].head >= ling.size() || *ling[i].head == i) {
        add("BAD_HEAD", {side, i, std::nullopt},
            side_name(side) + " token " + std::to_string(i) +
                " has invalid head " + std::to_string(*ling[i].head));
      }
    }
    if (!ling.empty() && roots != 1) {
      add("ROOT_COUNT", {side, std::nullopt, std::nullopt},
          side_name(side) + " dependency layer has " + std::to_string(roots) +
              " roots");
    }
  }

  const SentencePair& pair_;
  ValidationMode mode_;
  ValidationReport report_;
};

}  // namespace

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::source:
      return "source";
    case Side::target:
      return "target";
    default:
      return "sentence";
  }
}

bool ValidationReport::contains(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate(const SentencePair& pair, ValidationMode mode) {
  return Checker(pair, mode).run();
}

std::vector<RelationLabel> project_source_relations(const SentencePair& pair) {
  const std::size_t n = pair.src_tokens.size();
  std::vector<std::optional<RelationLabel>> slots(n);
  for (const auto& unit : pair.units) {
    for (TokenIndex i : unit.src) {
      if (i < n && !slots[i]) slots[i] = unit.relation;
    }
  }
  std::vector<RelationLabel> labels;
  labels.reserve(n);
  for (TokenIndex i = 0; i < n; ++i) {
    if (!slots[i]) {
      throw Error("INCOMPLETE", "sentence " + pair.id + ": source token " +
                                    std::to_string(i) + " is in no unit");
    }
    labels.push_back(*slots[i]);
  }
  return labels;
}

}  // namespace transrel
