#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "transrel/metrics.hpp"
#include "transrel/project.hpp"
#include "transrel/stat_table.hpp"

namespace transrel {

inline constexpr const char* kToolName = "transrel";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitDataViolation = 1,
  kExitConfigError = 2,
  kExitEnvironmentError = 3,
};

struct RunConfig {
  std::string manifest;
  std::string out_dir = "out";
  Denominator denominator = Denominator::reference;
  int decimals = 3;
  std::size_t top_k = 10;
  bool require_ling = false;
  TableFormat format = TableFormat::csv;
  std::optional<std::string> ne_spans;
  std::optional<std::string> fixed_expressions;
  std::optional<std::string> hypernyms;
  std::optional<std::string> glosses;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  Role corpus = Role::reference;
  std::optional<std::string> static_dir;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // written paths, in write order
  std::vector<std::string> messages;
};

/// Exit code for a library error code: manifest, flag and unreadable-file
/// problems are configuration errors; everything else is a data violation.
int exit_code_for(const std::string& error_code);

/// Complete-mode validation of both corpora plus the shared-source check;
/// writes validation_report.jsonl (one violation per line).
CommandResult cmd_validate(const RunConfig& config);

/// Token counts, relation distributions, literal-token ratios and genre
/// splits for each corpus.
CommandResult cmd_stats(const RunConfig& config);

/// Relation discrepancies and the per-sentence edit-distance series and summary.
CommandResult cmd_diff(const RunConfig& config);

/// Tables 9-19 for each corpus.
CommandResult cmd_subcat(const RunConfig& config);

/// Draft annotations from the alignments: <out>/<role>_annotations.jsonl.
CommandResult cmd_suggest(const RunConfig& config);

/// Runs the annotation service until stopped. `on_ready` runs on a helper
/// thread once the server accepts connections, with a stop callback.
int cmd_serve(const RunConfig& config,
              const std::function<void(int port, const std::function<void()>& stop)>& on_ready = {},
              std::vector<std::string>* messages = nullptr);

/// Metadata written ahead of every output table.
OutputMetadata output_metadata(const ProjectManifest& manifest, const RunConfig& config,
                               const StatTable& table);

}  // namespace transrel
