#include "transrel/project.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>

#include "transrel/text.hpp"
#include "transrel/validate.hpp"

namespace transrel {

namespace fs = std::filesystem;

std::string_view to_string(Role role) noexcept {
  return role == Role::reference ? "reference" : "candidate";
}

Role parse_role(std::string_view text) {
  if (text == "reference") return Role::reference;
  if (text == "candidate") return Role::candidate;
  throw Error("BAD_ROLE", "'" + std::string(text) + "' is not reference|candidate");
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

// --- manifest ------------------------------------------------------------------

namespace {

std::string resolve(const std::string& base_dir, std::string_view value) {
  const fs::path p{std::string(value)};
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::size_t parse_positive(std::string_view text, std::size_t lineno) {
  std::size_t value = 0;
  const auto t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("MANIFEST_SYNTAX", lineno, 0,
                     "'" + std::string(text) + "' is not a sentence number");
  }
  value = std::stoul(std::string(t));
  if (value == 0) {
    throw ParseError("MANIFEST_SYNTAX", lineno, 0, "sentence numbers start at 1");
  }
  return value;
}

void set_corpus_key(CorpusFiles& files, std::string_view key, std::string value,
                    const std::string& base_dir, std::size_t lineno) {
  if (key == "name") {
    files.name = std::move(value);
  } else if (key == "source") {
    files.source = resolve(base_dir, value);
  } else if (key == "target") {
    files.target = resolve(base_dir, value);
  } else if (key == "alignment") {
    files.alignment = resolve(base_dir, value);
  } else if (key == "annotations") {
    files.annotations = resolve(base_dir, value);
  } else if (key == "source_conllu") {
    files.source_conllu = resolve(base_dir, value);
  } else if (key == "target_conllu") {
    files.target_conllu = resolve(base_dir, value);
  } else {
    throw ParseError("MANIFEST_UNKNOWN_KEY", lineno, 0,
                     "unknown corpus key '" + std::string(key) + "'");
  }
}

void require(const std::string& value, const std::string& key) {
  if (value.empty()) throw Error("MANIFEST_MISSING_KEY", "'" + key + "' is required");
}

}  // namespace

ProjectManifest parse_manifest(std::string_view text, const std::string& base_dir) {
  ProjectManifest m;
  m.content_hash = fnv1a_hex(text);
  m.reference.name = "reference";
  m.candidate.name = "candidate";

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    const std::string_view line = trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("MANIFEST_SYNTAX", lineno, 0, "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string value(trim(line.substr(eq + 1)));
    if (value.empty()) {
      throw ParseError("MANIFEST_SYNTAX", lineno, 0,
                       "empty value for '" + std::string(key) + "'");
    }

    if (key == "project") {
      m.project = std::move(value);
    } else if (key.starts_with("reference.")) {
      set_corpus_key(m.reference, key.substr(10), std::move(value), base_dir, lineno);
    } else if (key.starts_with("candidate.")) {
      set_corpus_key(m.candidate, key.substr(10), std::move(value), base_dir, lineno);
    } else if (key.starts_with("genre.") && key.size() > 6) {
      const std::string genre(key.substr(6));
      for (std::string_view range : split(value, ',')) {
        const auto dash = range.find('-');
        GenreRange r{genre, 0, 0};
        if (dash == std::string_view::npos) {
          r.first = r.last = parse_positive(range, lineno);
        } else {
          r.first = parse_positive(range.substr(0, dash), lineno);
          r.last = parse_positive(range.substr(dash + 1), lineno);
        }
        if (r.last < r.first) {
          throw ParseError("MANIFEST_SYNTAX", lineno, 0,
                           "descending range '" + std::string(trim(range)) + "'");
        }
        m.genres.push_back(std::move(r));
      }
    } else {
      throw ParseError("MANIFEST_UNKNOWN_KEY", lineno, 0,
                       "unknown key '" + std::string(key) + "'");
    }
  }

  require(m.project, "project");
  for (const auto* files : {&m.reference, &m.candidate}) {
    const std::string role = files == &m.reference ? "reference" : "candidate";
    require(files->source, role + ".source");
    require(files->target, role + ".target");
    require(files->annotations, role + ".annotations");
  }
  return m;
}

ProjectManifest load_manifest(const std::string& path) {
  const std::string text = read_file(path);
  auto m = parse_manifest(text, fs::path(path).parent_path().string());
  m.path = path;
  return m;
}

std::string serialize_manifest(const ProjectManifest& m, const std::string& base_dir) {
  const auto rel = [&](const std::string& p) {
    if (base_dir.empty()) return p;
    return fs::path(p).lexically_relative(base_dir).string();
  };
  std::string out = "project = " + m.project + "\n";
  for (Role role : {Role::reference, Role::candidate}) {
    const CorpusFiles& f = m.files(role);
    const std::string prefix = std::string(to_string(role)) + ".";
    out += prefix + "name = " + f.name + "\n";
    out += prefix + "source = " + rel(f.source) + "\n";
    out += prefix + "target = " + rel(f.target) + "\n";
    if (f.alignment) out += prefix + "alignment = " + rel(*f.alignment) + "\n";
    out += prefix + "annotations = " + rel(f.annotations) + "\n";
    if (f.source_conllu) out += prefix + "source_conllu = " + rel(*f.source_conllu) + "\n";
    if (f.target_conllu) out += prefix + "target_conllu = " + rel(*f.target_conllu) + "\n";
  }
  for (const auto& g : m.genres) {
    out += "genre." + g.genre + " = " + std::to_string(g.first);
    if (g.last != g.first) out += "-" + std::to_string(g.last);
    out += "\n";
  }
  return out;
}

// --- loading -------------------------------------------------------------------

SharedSourceViolation::SharedSourceViolation(std::vector<std::string> ids)
    : Error("SHARED_SOURCE_VIOLATION",
            [&] {
              std::string msg = "source sentences differ:";
              for (const auto& id : ids) msg += " " + id;
              return msg;
            }()),
      ids_(std::move(ids)) {}

namespace {

[[noreturn]] void rethrow_in(const std::string& file, const Error& e) {
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    throw ParseError(pe->code(), pe->line(), pe->item(), file + ": " + pe->what());
  }
  throw Error(e.code(), file + ": " + e.what());
}

template <typename Fn>
auto parse_file(const std::string& path, Fn&& fn) {
  const std::string text = read_file(path);
  try {
    return fn(std::string_view(text));
  } catch (const Error& e) {
    rethrow_in(path, e);
  }
}

void expect_count(const std::string& what, std::size_t got, std::size_t want) {
  if (got != want) {
    throw Error("SENTENCE_COUNT_MISMATCH", what + " has " + std::to_string(got) +
                                               " sentences, expected " +
                                               std::to_string(want));
  }
}

std::optional<LingSequence>* ling_slot(SentencePair& s, Side side) {
  return side == Side::source ? &s.src_ling : &s.tgt_ling;
}

void attach_conllu(Project& project, LoadedCorpus& lc, const std::string& path,
                   Side side) {
  auto parsed = parse_file(path, parse_conllu);
  for (auto& w : parsed.warnings) project.warnings.push_back({path, std::move(w)});
  expect_count(path, parsed.value.size(), lc.corpus.sentences.size());
  for (std::size_t k = 0; k < parsed.value.size(); ++k) {
    SentencePair& s = lc.corpus.sentences[k];
    const auto& tokens = side == Side::source ? s.src_tokens : s.tgt_tokens;
    if (parsed.value[k].size() != tokens.size()) {
      throw Error("SENTENCE_COUNT_MISMATCH",
                  path + ": sentence " + s.id + " has " +
                      std::to_string(parsed.value[k].size()) +
                      " tokens, token file has " + std::to_string(tokens.size()));
    }
    *ling_slot(s, side) = std::move(parsed.value[k]);
  }
}

std::vector<std::string> genre_assignment(const ProjectManifest& m, std::size_t count) {
  std::vector<std::string> genres(count, kUnknownGenre);
  if (m.genres.empty()) return genres;
  std::vector<bool> assigned(count, false);
  for (const auto& r : m.genres) {
    for (std::size_t k = r.first; k <= r.last; ++k) {
      if (k > count) {
        throw Error("GENRE_MAP", "genre " + r.genre + " names sentence " +
                                     std::to_string(k) + " of " + std::to_string(count));
      }
      if (assigned[k - 1]) {
        throw Error("GENRE_MAP", "sentence " + std::to_string(k) +
                                     " is assigned to more than one genre");
      }
      assigned[k - 1] = true;
      genres[k - 1] = r.genre;
    }
  }
  const auto gap = std::find(assigned.begin(), assigned.end(), false);
  if (gap != assigned.end()) {
    throw Error("GENRE_MAP", "sentence " + std::to_string(gap - assigned.begin() + 1) +
                                 " has no genre");
  }
  return genres;
}

LoadedCorpus read_corpus(Project& project, const CorpusFiles& files,
                         const ReadOptions& options) {
  LoadedCorpus lc;
  lc.corpus.name = files.name;

  auto src = parse_file(files.source, parse_tokenized);
  auto tgt = parse_file(files.target, parse_tokenized);
  for (auto& w : src.warnings) project.warnings.push_back({files.source, std::move(w)});
  for (auto& w : tgt.warnings) project.warnings.push_back({files.target, std::move(w)});
  expect_count(files.target, tgt.value.size(), src.value.size());

  const std::size_t count = src.value.size();
  const auto genres = genre_assignment(project.manifest, count);
  lc.corpus.sentences.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    SentencePair& s = lc.corpus.sentences[k];
    s.id = sentence_id(k);
    s.genre = genres[k];
    s.src_tokens = std::move(src.value[k]);
    s.tgt_tokens = std::move(tgt.value[k]);
  }

  lc.edges.assign(count, {});
  if (files.alignment) {
    lc.edges = parse_file(*files.alignment, parse_alignment);
    lc.has_alignment = true;
    expect_count(*files.alignment, lc.edges.size(), count);
    for (std::size_t k = 0; k < count; ++k) {
      const SentencePair& s = lc.corpus.sentences[k];
      for (const auto& e : lc.edges[k]) {
        if (e.src >= s.src_tokens.size() || e.tgt >= s.tgt_tokens.size()) {
          throw Error("EDGE_OUT_OF_BOUNDS",
                      *files.alignment + ": sentence " + s.id + " edge " +
                          std::to_string(e.src) + "-" + std::to_string(e.tgt) +
                          " outside " + std::to_string(s.src_tokens.size()) + "x" +
                          std::to_string(s.tgt_tokens.size()));
        }
      }
    }
  }

  if (!options.require_annotations && !fs::exists(files.annotations)) {
    project.warnings.push_back(
        {files.annotations, {0, "annotation file absent; starting with no units"}});
  } else {
    auto ann = parse_file(files.annotations, parse_annotations);
    lc.annotations_present = true;
    for (auto& w : ann.warnings) project.warnings.push_back({files.annotations, std::move(w)});
    for (auto& [id, units] : ann.value.units) {
      SentencePair* s = lc.corpus.find(id);
      if (!s) {
        throw Error("UNKNOWN_SENTENCE",
                    files.annotations + ": no sentence with id '" + id + "'");
      }
      s->units = std::move(units);
    }
  }

  if (files.source_conllu) attach_conllu(project, lc, *files.source_conllu, Side::source);
  if (files.target_conllu) attach_conllu(project, lc, *files.target_conllu, Side::target);
  return lc;
}

}  // namespace

Project read_project(const ProjectManifest& manifest, const ReadOptions& options) {
  Project project;
  project.manifest = manifest;
  project.reference = read_corpus(project, manifest.reference, options);
  project.candidate = read_corpus(project, manifest.candidate, options);
  return project;
}

std::vector<std::string> shared_source_mismatches(const Corpus& reference,
                                                  const Corpus& candidate) {
  std::vector<std::string> ids;
  const std::size_t n = std::max(reference.sentences.size(), candidate.sentences.size());
  for (std::size_t k = 0; k < n; ++k) {
    const SentencePair* r = k < reference.sentences.size() ? &reference.sentences[k] : nullptr;
    const SentencePair* c = k < candidate.sentences.size() ? &candidate.sentences[k] : nullptr;
    if (!r || !c || r->id != c->id || r->src_tokens != c->src_tokens) {
      ids.push_back(r ? r->id : c->id);
    }
  }
  return ids;
}

void check_shared_source(const Corpus& reference, const Corpus& candidate) {
  auto ids = shared_source_mismatches(reference, candidate);
  if (ids.empty()) return;
  if (ids.size() > 10) ids.resize(10);
  throw SharedSourceViolation(std::move(ids));
}

Project load_project(const ProjectManifest& manifest, const ReadOptions& options) {
  Project project = read_project(manifest, options);
  for (Role role : {Role::reference, Role::candidate}) {
    for (const auto& s : project.side(role).corpus.sentences) {
      const auto report = validate(s, ValidationMode::draft);
      if (!report.ok()) {
        const auto& v = report.violations.front();
        throw Error("ANNOTATION_INVALID",
                    std::string(to_string(role)) + " sentence " + s.id + ": " +
                        std::to_string(report.violations.size()) +
                        " violation(s), first " + v.code + " (" + v.message + ")");
      }
    }
  }
  check_shared_source(project.reference.corpus, project.candidate.corpus);
  return project;
}

}  // namespace transrel
