#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "transrel/model.hpp"
#include "transrel/stat_table.hpp"

namespace transrel {

// Corpus-level statistics. Every function is a pure fold over the sentences;
// callers are expected to have validated the corpus in complete mode.

/// Which corpus supplies the denominator of a relative discrepancy.
enum class Denominator { reference, candidate };

std::string_view to_string(Denominator d) noexcept;
Denominator parse_denominator(std::string_view text);

/// Unit count and percentage per relation, 14 rows in taxonomy order plus a
/// "total" row. Header-only when the corpus has no units.
StatTable relation_distribution(const Corpus& corpus, int decimals = 3);

/// Literal vs non-literal unit counts per genre with the non-literal
/// percentage, plus a "total" row.
StatTable literal_split_by_genre(const Corpus& corpus, int decimals = 3);

/// Signed relative difference in percent:
///   reference: (c - r) / r * 100      candidate: (c - r) / c * 100
/// Throws Error("ZERO_DENOMINATOR") when the chosen denominator is 0.
double discrepancy_raw(double candidate_pct, double reference_pct, Denominator policy);

/// discrepancy_raw rounded half-up to `decimals` places.
double discrepancy(double candidate_pct, double reference_pct, Denominator policy,
                   int decimals = 3);

/// Joins two relation_distribution tables. Discrepancies are computed from
/// the percentages as printed (rounded to the table's decimals), so they
/// agree with hand arithmetic on the published figures. Rows whose
/// denominator is zero get an empty discrepancy cell and a note.
StatTable discrepancy_table(const StatTable& candidate_distribution,
                            const StatTable& reference_distribution, Denominator policy);

struct SentenceLiteralRatio {
  std::string id;
  std::string genre;
  std::size_t literal_tokens = 0;
  std::size_t tokens = 0;
  std::optional<double> ratio;  // nullopt for a sentence without tokens
};

struct TokenLiteralStats {
  std::vector<SentenceLiteralRatio> sentences;
  std::size_t literal_tokens = 0;
  std::size_t total_tokens = 0;
  /// (sum of literal tokens) / (sum of tokens) * 100.
  std::optional<double> pooled_percentage;
  /// Mean of the per-sentence ratios * 100; reported next to the pooled value.
  std::optional<double> mean_sentence_percentage;
};

/// Literal source tokens per sentence via project_source_relations.
TokenLiteralStats token_literal_stats(const Corpus& corpus);
StatTable token_literal_table(const TokenLiteralStats& stats, int decimals = 3);
StatTable literal_ratio_series(const TokenLiteralStats& stats, int decimals = 6);

/// Levenshtein distance (unit-cost insert, delete, substitute) between two
/// label sequences over the same source sentence. May be below the number of
/// differing positions (a,b,c vs b,c,a is 2). Throws Error("LENGTH_MISMATCH")
/// on unequal lengths, which signals a shared-source violation upstream.
std::size_t relation_edit_distance(std::span<const RelationLabel> reference,
                                   std::span<const RelationLabel> candidate);

struct SentenceDistance {
  std::string id;
  std::string genre;
  std::size_t distance = 0;
};

struct DistanceSummary {
  std::string genre;
  std::vector<std::size_t> values;  // sentence order
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

struct EditDistanceReport {
  std::vector<SentenceDistance> sentences;
  std::vector<DistanceSummary> genres;  // genres_in() order
};

/// Quantile with linear interpolation between closest ranks (the common
/// "type 7" definition). `sorted` must be non-empty and ascending.
double quantile(std::span<const double> sorted, double p);

/// Per-sentence relation edit distances grouped by genre. Throws
/// SharedSourceViolation when the sources differ and Error("GENRE_MISMATCH")
/// when a sentence has different genres in the two corpora.
EditDistanceReport edit_distance_by_genre(const Corpus& reference,
                                          const Corpus& candidate);
StatTable edit_distance_summary(const EditDistanceReport& report, int decimals = 3);
StatTable edit_distance_series(const EditDistanceReport& report);

struct GenreTokenCount {
  std::string genre;
  std::size_t sentences = 0;
  std::size_t source_tokens = 0;
  std::size_t target_tokens = 0;
};

struct TokenCounts {
  std::vector<GenreTokenCount> genres;
  GenreTokenCount total{"total"};
};

TokenCounts token_counts(const Corpus& corpus);
/// Genre rows plus "total"; header-only for a corpus without sentences.
StatTable token_counts_table(const TokenCounts& counts);

/// Relation x genre percentage matrix. Genres without units are omitted and
/// noted in the table's notes.
StatTable relation_distribution_by_genre(const Corpus& corpus, int decimals = 3);

}  // namespace transrel
