#include "transrel/commands.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "transrel/error.hpp"
#include "transrel/preannotate.hpp"
#include "transrel/service.hpp"
#include "transrel/subcat.hpp"
#include "transrel/text.hpp"
#include "transrel/validate.hpp"

namespace transrel {

namespace fs = std::filesystem;

int exit_code_for(const std::string& error_code) {
  static const std::set<std::string> kConfigCodes = {
      "UNREADABLE_FILE",      "UNWRITABLE_FILE",      "MANIFEST_SYNTAX",
      "MANIFEST_UNKNOWN_KEY", "MANIFEST_MISSING_KEY", "BAD_FORMAT",
      "BAD_ROLE",             "BAD_DENOMINATOR",      "BAD_CONFIG",
      "MISSING_LING",         "MALFORMED_RESOURCE",
  };
  return kConfigCodes.count(error_code) ? kExitConfigError : kExitDataViolation;
}

OutputMetadata output_metadata(const ProjectManifest& manifest, const RunConfig& config,
                               const StatTable& table) {
  OutputMetadata meta = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"project", manifest.project},
      {"manifest_hash", manifest.content_hash},
      {"table", table.name},
      {"source", table.provenance},
      {"decimals", std::to_string(table.decimals)},
      {"rounding", "half_away_from_zero"},
      {"denominator", std::string(to_string(config.denominator))},
  };
  for (const auto& note : table.notes) meta.emplace_back("note", note);
  return meta;
}

namespace {

void check_config(const RunConfig& config) {
  if (config.decimals < 0 || config.decimals > 6) {
    throw Error("BAD_CONFIG", "--decimals must lie in [0, 6], got " +
                                  std::to_string(config.decimals));
  }
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("UNWRITABLE_FILE", "cannot create output directory " + dir);
  }
}

void require_ling(const ProjectManifest& manifest) {
  for (Role role : {Role::reference, Role::candidate}) {
    const auto& files = manifest.files(role);
    if (!files.source_conllu || !files.target_conllu) {
      throw Error("MISSING_LING", std::string(to_string(role)) +
                                      " corpus has no source_conllu/target_conllu "
                                      "(required by --require-ling)");
    }
  }
}

ProjectManifest prepare(const RunConfig& config) {
  check_config(config);
  ProjectManifest manifest = load_manifest(config.manifest);
  if (config.require_ling) require_ling(manifest);
  return manifest;
}

void report_warnings(const Project& project, CommandResult& result) {
  for (const auto& w : project.warnings) {
    result.messages.push_back("warning: " + w.file + ":" + std::to_string(w.warning.line) +
                              ": " + w.warning.message);
  }
}

class TableWriter {
 public:
  TableWriter(const RunConfig& config, const ProjectManifest& manifest, CommandResult& result)
      : config_(config), manifest_(manifest), result_(result) {
    ensure_out_dir(config.out_dir);
  }

  void write(const StatTable& table, const std::string& stem) {
    const std::string path = (fs::path(config_.out_dir) /
                              (stem + "." + std::string(file_extension(config_.format))))
                                 .string();
    write_file_atomic(path, export_table(table, config_.format,
                                         output_metadata(manifest_, config_, table)));
    result_.files.push_back(path);
  }

 private:
  const RunConfig& config_;
  const ProjectManifest& manifest_;
  CommandResult& result_;
};

template <typename Body>
CommandResult guarded(Body&& body) {
  CommandResult result;
  try {
    body(result);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.code());
    result.messages.push_back(std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    result.exit_code = kExitEnvironmentError;
    result.messages.push_back(std::string("error: ") + e.what());
  }
  return result;
}

// Sentences that are fully covered; token-level statistics are defined only there.
Corpus complete_part(const Corpus& corpus, std::size_t& excluded) {
  Corpus out;
  out.name = corpus.name;
  excluded = 0;
  for (const auto& s : corpus.sentences) {
    if (validate(s, ValidationMode::complete).ok()) {
      out.sentences.push_back(s);
    } else {
      ++excluded;
    }
  }
  return out;
}

std::string role_suffix(Role role) { return "_" + std::string(to_string(role)); }

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
  return guarded([&](CommandResult& result) {
    const ProjectManifest manifest = prepare(config);
    ensure_out_dir(config.out_dir);
    const std::string path = (fs::path(config.out_dir) / "validation_report.jsonl").string();

    std::string report;
    std::size_t count = 0;
    const auto add = [&](nlohmann::ordered_json record) {
      report += record.dump() + "\n";
      ++count;
    };

    std::optional<Project> project;
    try {
      project = read_project(manifest);
    } catch (const Error& e) {
      if (exit_code_for(e.code()) == kExitConfigError) throw;
      add({{"corpus", nullptr}, {"sentence", nullptr}, {"code", e.code()}, {"message", e.what()}});
    }

    if (project) {
      report_warnings(*project, result);
      for (Role role : {Role::reference, Role::candidate}) {
        for (const auto& s : project->side(role).corpus.sentences) {
          for (const auto& v : validate(s, ValidationMode::complete).violations) {
            nlohmann::ordered_json record = {{"corpus", std::string(to_string(role))},
                                             {"sentence", s.id},
                                             {"code", v.code},
                                             {"side", std::string(to_string(v.locus.side))}};
            if (v.locus.token) record["token"] = *v.locus.token;
            if (v.locus.unit) record["unit"] = *v.locus.unit;
            record["message"] = v.message;
            add(std::move(record));
          }
        }
      }
      for (const auto& id :
           shared_source_mismatches(project->reference.corpus, project->candidate.corpus)) {
        add({{"corpus", nullptr},
             {"sentence", id},
             {"code", "SHARED_SOURCE_VIOLATION"},
             {"message", "source tokens differ between the corpora"}});
      }
    }

    write_file_atomic(path, report);
    result.files.push_back(path);
    result.messages.push_back(std::to_string(count) + " violation(s)");
    result.exit_code = count == 0 ? kExitOk : kExitDataViolation;
  });
}

CommandResult cmd_stats(const RunConfig& config) {
  return guarded([&](CommandResult& result) {
    const ProjectManifest manifest = prepare(config);
    const Project project = load_project(manifest);
    report_warnings(project, result);
    TableWriter out(config, manifest, result);

    for (Role role : {Role::reference, Role::candidate}) {
      const Corpus& corpus = project.side(role).corpus;
      const std::string suffix = role_suffix(role);

      out.write(token_counts_table(token_counts(corpus)), "token_counts" + suffix);
      out.write(relation_distribution(corpus, config.decimals), "relation_distribution" + suffix);

      std::size_t excluded = 0;
      const auto literal = token_literal_stats(complete_part(corpus, excluded));
      StatTable literal_table = token_literal_table(literal, config.decimals);
      StatTable ratio_series = literal_ratio_series(literal);
      if (excluded > 0) {
        const std::string note = std::to_string(excluded) +
                                 " incompletely annotated sentence(s) excluded";
        literal_table.notes.push_back(note);
        ratio_series.notes.push_back(note);
        result.messages.push_back("warning: " + std::string(to_string(role)) + ": " + note);
      }
      out.write(literal_table, "token_literal" + suffix);
      out.write(literal_split_by_genre(corpus, config.decimals), "literal_split_by_genre" + suffix);
      out.write(ratio_series, "literal_ratio_series" + suffix);
      out.write(relation_distribution_by_genre(corpus, config.decimals),
                "relation_by_genre" + suffix);
    }
  });
}

CommandResult cmd_diff(const RunConfig& config) {
  return guarded([&](CommandResult& result) {
    const ProjectManifest manifest = prepare(config);
    const Project project = load_project(manifest);
    report_warnings(project, result);
    TableWriter out(config, manifest, result);

    const Corpus& reference = project.reference.corpus;
    const Corpus& candidate = project.candidate.corpus;
    StatTable diff = discrepancy_table(relation_distribution(candidate, config.decimals),
                                         relation_distribution(reference, config.decimals),
                                         config.denominator);
    diff.notes.push_back(config.denominator == Denominator::reference
                               ? "discrepancy = (candidate - reference) / reference * 100"
                               : "discrepancy = (candidate - reference) / candidate * 100");
    out.write(diff, "discrepancy");

    const auto report = edit_distance_by_genre(reference, candidate);
    out.write(edit_distance_series(report), "edit_distance_series");
    out.write(edit_distance_summary(report, config.decimals), "edit_distance_summary");
  });
}

CommandResult cmd_subcat(const RunConfig& config) {
  return guarded([&](CommandResult& result) {
    const ProjectManifest manifest = prepare(config);
    SubcatResources resources;
    if (config.ne_spans) {
      resources.named_entities = parse_named_entity_spans(read_file(*config.ne_spans));
    }
    if (config.fixed_expressions) {
      resources.fixed_expressions = parse_fixed_expressions(read_file(*config.fixed_expressions));
    }
    if (config.hypernyms) resources.hypernyms = parse_term_lexicon(read_file(*config.hypernyms));
    if (config.glosses) resources.glosses = parse_term_lexicon(read_file(*config.glosses));

    const Project project = load_project(manifest);
    report_warnings(project, result);
    TableWriter out(config, manifest, result);

    static const std::vector<std::pair<RelationLabel, std::string>> kRelationTables = {
        {RelationLabel::equivalence, "subcat_equivalence"},
        {RelationLabel::generalization, "subcat_generalization"},
        {RelationLabel::lexical_shift, "subcat_lexical_shift"},
        {RelationLabel::modulation, "subcat_modulation"},
        {RelationLabel::modulation_transposition, "subcat_modulation_transposition"},
        {RelationLabel::particularization, "subcat_particularization"},
        {RelationLabel::transposition, "subcat_transposition"},
    };
    struct ProfileSpec {
      UnalignedSide side;
      Facet facet;
      const char* stem;
    };
    static const std::vector<ProfileSpec> kProfiles = {
        {UnalignedSide::explicitation, Facet::pos, "explicitation_pos"},
        {UnalignedSide::explicitation, Facet::dep, "explicitation_dep"},
        {UnalignedSide::reduction, Facet::pos, "reduction_pos"},
        {UnalignedSide::reduction, Facet::dep, "reduction_dep"},
    };

    for (Role role : {Role::reference, Role::candidate}) {
      const Corpus& corpus = project.side(role).corpus;
      const std::string suffix = role_suffix(role);
      for (const auto& [relation, stem] : kRelationTables) {
        StatTable t = sub_category_profile(corpus, relation, resources);
        if (relation == RelationLabel::transposition) t = top_k(t, config.top_k);
        out.write(t, stem + suffix);
      }
      for (const auto& profile : kProfiles) {
        StatTable t;
        try {
          t = top_k(profile_unaligned(corpus, profile.side, profile.facet), config.top_k);
        } catch (const Error& e) {
          if (e.code() != "MISSING_LING") throw;
          t.name = profile.stem;
          t.provenance = profile.stem;
          t.row_header = profile.facet == Facet::pos ? "upos" : "deprel";
          t.columns = {{"count", ColumnKind::count}};
          t.notes.push_back(e.what());
          result.messages.push_back("warning: " + std::string(to_string(role)) + ": " + e.what());
        }
        out.write(t, profile.stem + suffix);
      }
    }
  });
}

CommandResult cmd_suggest(const RunConfig& config) {
  return guarded([&](CommandResult& result) {
    const ProjectManifest manifest = prepare(config);
    const Project project = load_project(manifest, {.require_annotations = false});
    report_warnings(project, result);
    ensure_out_dir(config.out_dir);

    for (Role role : {Role::reference, Role::candidate}) {
      const LoadedCorpus& side = project.side(role);
      if (!side.has_alignment) {
        result.messages.push_back("warning: " + std::string(to_string(role)) +
                                  ": no alignment file, using diagonal fallback edges");
      }
      Corpus draft;
      draft.name = side.corpus.name;
      std::map<std::string, std::size_t> by_rule;
      for (std::size_t k = 0; k < side.corpus.sentences.size(); ++k) {
        const SentencePair& s = side.corpus.sentences[k];
        const SentenceEdges edges = side.has_alignment
                                        ? side.edges.at(k)
                                        : diagonal_edges(s.src_tokens.size(), s.tgt_tokens.size());
        auto pre = preannotate_sentence(s, edges);
        for (const auto& sug : pre.suggestions) ++by_rule[sug.rule_id];
        draft.sentences.push_back(std::move(pre.draft));
      }
      const std::string path =
          (fs::path(config.out_dir) / (std::string(to_string(role)) + "_annotations.jsonl"))
              .string();
      write_file_atomic(path, serialize_annotations(draft));
      result.files.push_back(path);
      for (const auto& [rule, n] : by_rule) {
        result.messages.push_back(std::string(to_string(role)) + ": " + rule + " " +
                                  std::to_string(n));
      }
    }
  });
}

int cmd_serve(const RunConfig& config,
              const std::function<void(int, const std::function<void()>&)>& on_ready,
              std::vector<std::string>* messages) {
  const auto say = [&](const std::string& m) {
    if (messages) messages->push_back(m);
  };
  std::optional<Project> project;
  try {
    const ProjectManifest manifest = prepare(config);
    project = load_project(manifest, {.require_annotations = false});
  } catch (const Error& e) {
    say(std::string("error: ") + e.what());
    return exit_code_for(e.code());
  }

  ServiceOptions options;
  options.default_role = config.corpus;
  options.static_dir = config.static_dir;
  AnnotationService service(std::move(*project), options);
  HttpServer server(service);

  int port = config.port;
  if (port == 0) {
    port = server.bind_any(config.host);
    if (port < 0) {
      say("error: cannot bind an ephemeral port on " + config.host);
      return kExitEnvironmentError;
    }
  } else if (!server.bind(config.host, port)) {
    say("error: cannot bind " + config.host + ":" + std::to_string(port) +
        " (port in use or not permitted)");
    return kExitEnvironmentError;
  }
  say("listening on http://" + config.host + ":" + std::to_string(port));

  std::thread helper;
  if (on_ready) {
    helper = std::thread([&] {
      server.wait_until_ready();
      on_ready(port, [&] { server.stop(); });
    });
  }
  const bool ok = server.listen();
  if (helper.joinable()) helper.join();
  try {
    service.flush();
  } catch (const Error& e) {
    say(std::string("error: ") + e.what());
    return exit_code_for(e.code());
  }
  return ok ? kExitOk : kExitEnvironmentError;
}

}  // namespace transrel
