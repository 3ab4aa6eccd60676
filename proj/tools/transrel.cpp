#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "transrel/commands.hpp"
#include "transrel/error.hpp"

namespace {

int print(const transrel::CommandResult& result) {
  for (const auto& m : result.messages) {
    (m.starts_with("error") || m.starts_with("warning") ? std::cerr : std::cout) << m << "\n";
  }
  for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace transrel;

  CLI::App app{"Translation-relation corpus toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  RunConfig config;
  std::string denominator = "reference";
  std::string format = "csv";
  std::string corpus = "reference";

  const std::map<std::string, std::string> kHelp = {
      {"validate", "Check both corpora for complete, consistent annotation"},
      {"stats", "Token counts, relation distributions and literal ratios per corpus"},
      {"diff", "Relation discrepancies and per-genre edit distances between corpora"},
      {"subcat", "Sub-category and unaligned-token profiles per corpus"},
      {"suggest", "Draft annotations from alignments by rule-based pre-annotation"},
      {"serve", "Run the annotation HTTP service"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : {"validate", "stats", "diff", "subcat", "suggest", "serve"}) {
    CLI::App* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("--manifest", config.manifest, "Project manifest file")->required();
    sub->add_flag("--require-ling", config.require_ling,
                  "Fail unless both corpora have CoNLL-U layers");
    subs[name] = sub;
  }
  for (const auto& name : {"validate", "stats", "diff", "subcat", "suggest"}) {
    subs[name]->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
  }
  for (const auto& name : {"stats", "diff", "subcat"}) {
    subs[name]
        ->add_option("--format", format, "Table format")
        ->check(CLI::IsMember({"csv", "tsv", "jsonl"}))
        ->capture_default_str();
    subs[name]
        ->add_option("--decimals", config.decimals, "Rounding decimals for real columns")
        ->check(CLI::Range(0, 6))
        ->capture_default_str();
  }
  subs["diff"]
      ->add_option("--denominator", denominator, "Discrepancy denominator corpus")
      ->check(CLI::IsMember({"reference", "candidate"}))
      ->capture_default_str();
  subs["subcat"]->add_option("--top-k", config.top_k, "Rows kept in profile tables")
      ->capture_default_str();
  subs["subcat"]->add_option("--ne-spans", config.ne_spans, "Named-entity span file");
  subs["subcat"]->add_option("--fixed-expr", config.fixed_expressions, "Fixed-expression list");
  subs["subcat"]->add_option("--hypernyms", config.hypernyms, "Hyperonym lexicon");
  subs["subcat"]->add_option("--glosses", config.glosses, "Literal gloss table");
  subs["serve"]->add_option("--port", config.port, "TCP port (0 picks a free one)")
      ->capture_default_str();
  subs["serve"]->add_option("--host", config.host, "Bind address")->capture_default_str();
  subs["serve"]
      ->add_option("--corpus", corpus, "Corpus edited when a request names none")
      ->check(CLI::IsMember({"reference", "candidate"}))
      ->capture_default_str();
  subs["serve"]->add_option("--static", config.static_dir, "Directory of UI assets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  config.denominator = parse_denominator(denominator);
  config.format = parse_table_format(format);
  config.corpus = parse_role(corpus);

  if (subs["validate"]->parsed()) return print(cmd_validate(config));
  if (subs["stats"]->parsed()) return print(cmd_stats(config));
  if (subs["diff"]->parsed()) return print(cmd_diff(config));
  if (subs["subcat"]->parsed()) return print(cmd_subcat(config));
  if (subs["suggest"]->parsed()) return print(cmd_suggest(config));

  std::vector<std::string> messages;
  const int code = cmd_serve(
      config, [&](int, const std::function<void()>&) {
        for (const auto& m : messages) std::cout << m << std::endl;
      },
      &messages);
  if (code != kExitOk) {
    for (const auto& m : messages) std::cerr << m << "\n";
  }
  return code;
}
