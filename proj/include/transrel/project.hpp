#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transrel/error.hpp"
#include "transrel/ingest.hpp"
#include "transrel/model.hpp"

namespace transrel {

enum class Role { reference, candidate };

std::string_view to_string(Role role) noexcept;
Role parse_role(std::string_view text);

/// File set of one corpus. Paths are resolved against the manifest directory.
struct CorpusFiles {
  std::string name;
  std::string source;
  std::string target;
  std::optional<std::string> alignment;
  std::string annotations;
  std::optional<std::string> source_conllu;
  std::optional<std::string> target_conllu;
};

/// Inclusive range of 1-based sentence numbers assigned to one genre.
struct GenreRange {
  std::string genre;
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Project manifest, a "key = value" text file:
///
///   project = demo
///   reference.name = HT
///   reference.source = ht/source.txt
///   reference.target = ht/target.txt
///   reference.alignment = ht/corpus.aln          (optional)
///   reference.annotations = ht/annotations.jsonl
///   reference.source_conllu = ht/source.conllu   (optional)
///   reference.target_conllu = ht/target.conllu   (optional)
///   candidate.* ...                               (same keys)
///   genre.education = 1-50
///   genre.microblog = 51-103, 120
///
/// '#' starts a comment line. Genre keys are optional; when present they must
/// cover every sentence exactly once.
struct ProjectManifest {
  std::string path;  // manifest file, empty when built in memory
  std::string project;
  CorpusFiles reference;
  CorpusFiles candidate;
  std::vector<GenreRange> genres;
  std::string content_hash;  // FNV-1a 64 of the manifest bytes, hex

  const CorpusFiles& files(Role role) const {
    return role == Role::reference ? reference : candidate;
  }
};

/// Errors: MANIFEST_SYNTAX, MANIFEST_MISSING_KEY, MANIFEST_UNKNOWN_KEY.
ProjectManifest parse_manifest(std::string_view text, const std::string& base_dir);

/// Reads and parses a manifest file (UNREADABLE_FILE when absent).
ProjectManifest load_manifest(const std::string& path);

std::string serialize_manifest(const ProjectManifest& manifest,
                               const std::string& base_dir);

std::string fnv1a_hex(std::string_view bytes);

struct LoadedCorpus {
  Corpus corpus;
  AlignmentEdgeList edges;  // one entry per sentence; empty lists without a file
  bool has_alignment = false;
  bool annotations_present = false;
};

struct ProjectWarning {
  std::string file;
  Warning warning;
};

struct Project {
  ProjectManifest manifest;
  LoadedCorpus reference;
  LoadedCorpus candidate;
  std::vector<ProjectWarning> warnings;

  LoadedCorpus& side(Role role) {
    return role == Role::reference ? reference : candidate;
  }
  const LoadedCorpus& side(Role role) const {
    return role == Role::reference ? reference : candidate;
  }
};

struct ReadOptions {
  // When false, a missing annotation file yields empty unit lists.
  bool require_annotations = true;
};

/// Raised when the two corpora do not share identical source sentences.
class SharedSourceViolation : public Error {
 public:
  explicit SharedSourceViolation(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::string> ids_;
};

/// Parses every file and cross-checks counts and bounds, without validating
/// annotations or comparing the two sources. Errors: any parser error (with
/// the file name prefixed to the message), SENTENCE_COUNT_MISMATCH,
/// EDGE_OUT_OF_BOUNDS, UNKNOWN_SENTENCE, GENRE_MAP.
Project read_project(const ProjectManifest& manifest, const ReadOptions& options = {});

/// Ids of sentences whose source tokens differ between the corpora, in
/// sentence order; sentences beyond the shorter corpus count as differing.
std::vector<std::string> shared_source_mismatches(const Corpus& reference,
                                                  const Corpus& candidate);

/// Throws SharedSourceViolation listing at most the first 10 differing ids.
void check_shared_source(const Corpus& reference, const Corpus& candidate);

/// read_project, then draft validation of every sentence (ANNOTATION_INVALID)
/// and the shared-source check.
Project load_project(const ProjectManifest& manifest, const ReadOptions& options = {});

}  // namespace transrel
