#include "transrel/metrics.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "transrel/error.hpp"
#include "transrel/project.hpp"
#include "transrel/validate.hpp"

namespace transrel {

namespace {

using Counts = std::array<std::size_t, kRelationCount>;

Counts count_units(const Corpus& corpus, const std::string* genre = nullptr) {
  Counts counts{};
  for (const auto& s : corpus.sentences) {
    if (genre && s.genre != *genre) continue;
    for (const auto& u : s.units) ++counts[index_of(u.relation)];
  }
  return counts;
}

std::size_t sum(const Counts& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

double percent(std::size_t part, std::size_t whole) {
  return static_cast<double>(part) / static_cast<double>(whole) * 100.0;
}

}  // namespace

std::string_view to_string(Denominator d) noexcept {
  return d == Denominator::reference ? "reference" : "candidate";
}

Denominator parse_denominator(std::string_view text) {
  if (text == "reference") return Denominator::reference;
  if (text == "candidate") return Denominator::candidate;
  throw Error("BAD_DENOMINATOR", "'" + std::string(text) + "' is not reference|candidate");
}

StatTable relation_distribution(const Corpus& corpus, int decimals) {
  StatTable t;
  t.name = "relation_distribution";
  t.provenance = "relation_distribution(" + corpus.name + ")";
  t.row_header = "relation";
  t.columns = {{"count", ColumnKind::count}, {"percentage", ColumnKind::real}};
  t.decimals = decimals;

  const Counts counts = count_units(corpus);
  const std::size_t total = sum(counts);
  if (total == 0) {
    t.notes.push_back("corpus has no units");
    return t;
  }
  for (RelationLabel r : kAllRelations) {
    const auto c = counts[index_of(r)];
    t.rows.push_back({std::string(to_string(r)), {double(c), percent(c, total)}});
  }
  t.rows.push_back({"total", {double(total), 100.0}});
  return t;
}

StatTable literal_split_by_genre(const Corpus& corpus, int decimals) {
  StatTable t;
  t.name = "literal_split_by_genre";
  t.provenance = "literal_split_by_genre(" + corpus.name + ")";
  t.row_header = "genre";
  t.columns = {{"literal", ColumnKind::count},
               {"non_literal", ColumnKind::count},
               {"non_literal_percentage", ColumnKind::real}};
  t.decimals = decimals;
  if (corpus.sentences.empty()) return t;

  const auto row = [](std::string label, const Counts& counts) {
    const std::size_t literal = counts[index_of(RelationLabel::literal)];
    const std::size_t total = sum(counts);
    std::optional<double> pct;
    if (total > 0) pct = percent(total - literal, total);
    return StatRow{std::move(label), {double(literal), double(total - literal), pct}};
  };
  for (const auto& genre : genres_in(corpus)) {
    t.rows.push_back(row(genre, count_units(corpus, &genre)));
  }
  t.rows.push_back(row("total", count_units(corpus)));
  return t;
}

double discrepancy_raw(double candidate_pct, double reference_pct, Denominator policy) {
  const double denom = policy == Denominator::reference ? reference_pct : candidate_pct;
  if (denom == 0.0) {
    throw Error("ZERO_DENOMINATOR",
                std::string(to_string(policy)) + " percentage is zero");
  }
  return (candidate_pct - reference_pct) / denom * 100.0;
}

double discrepancy(double candidate_pct, double reference_pct, Denominator policy,
                   int decimals) {
  return round_half_up(discrepancy_raw(candidate_pct, reference_pct, policy), decimals);
}

StatTable discrepancy_table(const StatTable& cand, const StatTable& ref,
                            Denominator policy) {
  StatTable t;
  t.name = "discrepancy";
  t.provenance = "discrepancy(" + cand.provenance + ", " + ref.provenance +
                 ", denominator=" + std::string(to_string(policy)) + ")";
  t.row_header = "relation";
  t.columns = {{"candidate_count", ColumnKind::count},
               {"reference_count", ColumnKind::count},
               {"candidate_percentage", ColumnKind::real},
               {"reference_percentage", ColumnKind::real},
               {"discrepancy", ColumnKind::real}};
  t.decimals = cand.decimals;
  t.notes.push_back("denominator=" + std::string(to_string(policy)));

  std::vector<std::string> labels;
  for (RelationLabel r : kAllRelations) labels.emplace_back(to_string(r));
  labels.emplace_back("total");
  for (const auto& label : labels) {
    const StatRow* c = cand.find_row(label);
    const StatRow* r = ref.find_row(label);
    if (!c && !r) continue;
    const double cc = c ? c->values[0].value_or(0) : 0.0;
    const double rc = r ? r->values[0].value_or(0) : 0.0;
    const double cp = round_half_up(c ? c->values[1].value_or(0) : 0.0, t.decimals);
    const double rp = round_half_up(r ? r->values[1].value_or(0) : 0.0, t.decimals);
    std::optional<double> d;
    try {
      d = discrepancy_raw(cp, rp, policy);
    } catch (const Error&) {
      t.notes.push_back(label + ": zero denominator, discrepancy left empty");
    }
    t.rows.push_back({label, {cc, rc, cp, rp, d}});
  }
  return t;
}

TokenLiteralStats token_literal_stats(const Corpus& corpus) {
  TokenLiteralStats stats;
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (const auto& s : corpus.sentences) {
    const auto labels = project_source_relations(s);
    SentenceLiteralRatio row{s.id, s.genre, 0, labels.size(), std::nullopt};
    row.literal_tokens = static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), RelationLabel::literal));
    if (row.tokens > 0) {
      row.ratio = static_cast<double>(row.literal_tokens) / static_cast<double>(row.tokens);
      ratio_sum += *row.ratio;
      ++ratio_count;
    }
    stats.literal_tokens += row.literal_tokens;
    stats.total_tokens += row.tokens;
    stats.sentences.push_back(std::move(row));
  }
  if (stats.total_tokens > 0) {
    stats.pooled_percentage = percent(stats.literal_tokens, stats.total_tokens);
  }
  if (ratio_count > 0) {
    stats.mean_sentence_percentage = ratio_sum / static_cast<double>(ratio_count) * 100.0;
  }
  return stats;
}

StatTable token_literal_table(const TokenLiteralStats& stats, int decimals) {
  StatTable t;
  t.name = "token_literal_stats";
  t.provenance = "token_literal_stats";
  t.row_header = "source_tokens";
  t.columns = {{"count", ColumnKind::count}, {"percentage", ColumnKind::real}};
  t.decimals = decimals;
  if (stats.total_tokens == 0) return t;
  const double pooled = *stats.pooled_percentage;
  t.rows.push_back({"literal", {double(stats.literal_tokens), pooled}});
  t.rows.push_back({"non_literal",
                    {double(stats.total_tokens - stats.literal_tokens), 100.0 - pooled}});
  t.rows.push_back({"total", {double(stats.total_tokens), 100.0}});
  t.rows.push_back({"mean_sentence_ratio", {std::nullopt, stats.mean_sentence_percentage}});
  return t;
}

StatTable literal_ratio_series(const TokenLiteralStats& stats, int decimals) {
  StatTable t;
  t.name = "literal_ratio_series";
  t.provenance = "token_literal_stats per sentence";
  t.row_header = "sentence";
  t.key_columns = {"genre"};
  t.columns = {{"literal_tokens", ColumnKind::count},
               {"tokens", ColumnKind::count},
               {"ratio", ColumnKind::real}};
  t.decimals = decimals;
  for (const auto& s : stats.sentences) {
    t.rows.push_back({s.id, {double(s.literal_tokens), double(s.tokens), s.ratio}, {s.genre}});
  }
  return t;
}

std::size_t relation_edit_distance(std::span<const RelationLabel> reference,
                                   std::span<const RelationLabel> candidate) {
  if (reference.size() != candidate.size()) {
    throw Error("LENGTH_MISMATCH", "sequences of length " +
                                       std::to_string(reference.size()) + " and " +
                                       std::to_string(candidate.size()));
  }
  // Two-row dynamic programme over (reference prefix, candidate prefix).
  const std::size_t m = candidate.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t substitute = prev[j - 1] + (reference[i - 1] == candidate[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("EMPTY_SAMPLE", "quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

EditDistanceReport edit_distance_by_genre(const Corpus& reference,
                                          const Corpus& candidate) {
  check_shared_source(reference, candidate);
  EditDistanceReport report;
  std::map<std::string, std::vector<std::size_t>> by_genre;
  for (std::size_t k = 0; k < reference.sentences.size(); ++k) {
    const SentencePair& r = reference.sentences[k];
    const SentencePair& c = candidate.sentences[k];
    if (r.genre != c.genre) {
      throw Error("GENRE_MISMATCH", "sentence " + r.id + " is " + r.genre + " in " +
                                        reference.name + " but " + c.genre + " in " +
                                        candidate.name);
    }
    const auto rl = project_source_relations(r);
    const auto cl = project_source_relations(c);
    const std::size_t d = relation_edit_distance(rl, cl);
    report.sentences.push_back({r.id, r.genre, d});
    by_genre[r.genre].push_back(d);
  }
  for (const auto& genre : genres_in(reference)) {
    DistanceSummary s;
    s.genre = genre;
    s.values = by_genre[genre];
    std::vector<double> sorted(s.values.begin(), s.values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.q1 = quantile(sorted, 0.25);
    s.median = quantile(sorted, 0.5);
    s.q3 = quantile(sorted, 0.75);
    s.max = sorted.back();
    report.genres.push_back(std::move(s));
  }
  return report;
}

StatTable edit_distance_summary(const EditDistanceReport& report, int decimals) {
  StatTable t;
  t.name = "edit_distance_summary";
  t.provenance = "edit_distance_by_genre";
  t.row_header = "genre";
  t.columns = {{"sentences", ColumnKind::count}, {"min", ColumnKind::real},
               {"q1", ColumnKind::real},        {"median", ColumnKind::real},
               {"q3", ColumnKind::real},        {"max", ColumnKind::real},
               {"total", ColumnKind::count}};
  t.decimals = decimals;
  for (const auto& g : report.genres) {
    std::size_t total = 0;
    for (auto v : g.values) total += v;
    t.rows.push_back({g.genre,
                      {double(g.values.size()), g.min, g.q1, g.median, g.q3, g.max,
                       double(total)}});
  }
  return t;
}

StatTable edit_distance_series(const EditDistanceReport& report) {
  StatTable t;
  t.name = "edit_distance_series";
  t.provenance = "edit_distance_by_genre per sentence";
  t.row_header = "sentence";
  t.key_columns = {"genre"};
  t.columns = {{"distance", ColumnKind::count}};
  for (const auto& s : report.sentences) {
    t.rows.push_back({s.id, {double(s.distance)}, {s.genre}});
  }
  return t;
}

TokenCounts token_counts(const Corpus& corpus) {
  TokenCounts counts;
  for (const auto& genre : genres_in(corpus)) {
    GenreTokenCount g{genre};
    for (const auto& s : corpus.sentences) {
      if (s.genre != genre) continue;
      ++g.sentences;
      g.source_tokens += s.src_tokens.size();
      g.target_tokens += s.tgt_tokens.size();
    }
    counts.total.sentences += g.sentences;
    counts.total.source_tokens += g.source_tokens;
    counts.total.target_tokens += g.target_tokens;
    counts.genres.push_back(std::move(g));
  }
  return counts;
}

StatTable token_counts_table(const TokenCounts& counts) {
  StatTable t;
  t.name = "token_counts";
  t.provenance = "token_counts";
  t.row_header = "genre";
  t.columns = {{"sentences", ColumnKind::count},
               {"source_tokens", ColumnKind::count},
               {"target_tokens", ColumnKind::count}};
  if (counts.total.sentences == 0) return t;
  const auto row = [](const GenreTokenCount& g) {
    return StatRow{g.genre, {double(g.sentences), double(g.source_tokens),
                             double(g.target_tokens)}};
  };
  for (const auto& g : counts.genres) t.rows.push_back(row(g));
  t.rows.push_back(row(counts.total));
  return t;
}

StatTable relation_distribution_by_genre(const Corpus& corpus, int decimals) {
  StatTable t;
  t.name = "relation_distribution_by_genre";
  t.provenance = "relation_distribution_by_genre(" + corpus.name + ")";
  t.row_header = "relation";
  t.decimals = decimals;

  std::vector<Counts> per_genre;
  std::vector<std::size_t> totals;
  for (const auto& genre : genres_in(corpus)) {
    const Counts counts = count_units(corpus, &genre);
    const std::size_t total = sum(counts);
    if (total == 0) {
      t.notes.push_back("WARN genre " + genre + " has no units; omitted");
      continue;
    }
    t.columns.push_back({genre, ColumnKind::real});
    per_genre.push_back(counts);
    totals.push_back(total);
  }
  if (t.columns.empty()) return t;
  for (RelationLabel r : kAllRelations) {
    StatRow row{std::string(to_string(r)), {}};
    for (std::size_t g = 0; g < per_genre.size(); ++g) {
      row.values.push_back(percent(per_genre[g][index_of(r)], totals[g]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace transrel
