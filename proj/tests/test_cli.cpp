#include <doctest.h>

#include <filesystem>

#include <httplib.h>

#include "test_support.hpp"
#include "transrel/commands.hpp"

using namespace transrel;
using namespace transrel::testing;

namespace {

RunConfig demo_config(const TempDir& dir) {
  copy_demo(dir);
  RunConfig config;
  config.manifest = dir.file("project.manifest");
  config.out_dir = dir.file("out");
  return config;
}

void replace_in(const TempDir& dir, const std::string& name, const std::string& from,
                const std::string& to) {
  auto text = read_file(dir.file(name));
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  dir.write(name, text);
}

std::map<std::string, std::string> snapshot(const std::vector<std::string>& files) {
  std::map<std::string, std::string> out;
  for (const auto& f : files) out[f] = read_file(f);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code classification") {
  CHECK(exit_code_for("MANIFEST_SYNTAX") == kExitConfigError);
  CHECK(exit_code_for("UNREADABLE_FILE") == kExitConfigError);
  CHECK(exit_code_for("MISSING_LING") == kExitConfigError);
  CHECK(exit_code_for("OVERLAP") == kExitDataViolation);
  CHECK(exit_code_for("SHARED_SOURCE_VIOLATION") == kExitDataViolation);
}

TEST_CASE("validate") {
  TempDir dir;
  auto config = demo_config(dir);
  auto clean = cmd_validate(config);
  CHECK(clean.exit_code == kExitOk);
  CHECK(read_file(dir.file("out/validation_report.jsonl")).empty());

  replace_in(dir, "mt/annotations.jsonl", R"({"id":"s1","src":[1],"tgt":[1])",
             R"({"id":"s1","src":[0],"tgt":[1])");
  const auto dirty = cmd_validate(config);
  CHECK(dirty.exit_code == kExitDataViolation);
  const auto report = read_file(dir.file("out/validation_report.jsonl"));
  CHECK(report.find("\"OVERLAP\"") != std::string::npos);
  CHECK(report.find("\"corpus\":\"candidate\"") != std::string::npos);

  config.manifest = dir.file("missing.manifest");
  CHECK(cmd_validate(config).exit_code == kExitConfigError);
}

TEST_CASE("--require-ling without CoNLL-U layers is a configuration error") {
  TempDir dir;
  auto config = demo_config(dir);
  replace_in(dir, "project.manifest", "candidate.target_conllu = mt/target.conllu\n", "");
  config.require_ling = true;
  CHECK(cmd_stats(config).exit_code == kExitConfigError);
  config.require_ling = false;
  CHECK(cmd_stats(config).exit_code == kExitOk);
}

TEST_CASE("stats") {
  TempDir dir;
  auto config = demo_config(dir);
  const auto first = cmd_stats(config);
  REQUIRE(first.exit_code == kExitOk);
  CHECK(first.files.size() == 12);
  const auto before = snapshot(first.files);
  const auto dist = read_file(dir.file("out/relation_distribution_candidate.csv"));
  CHECK(dist.find("# manifest_hash=") != std::string::npos);
  CHECK(dist.find("\nliteral,") != std::string::npos);

  const auto second = cmd_stats(config);
  CHECK(second.files == first.files);
  CHECK(snapshot(second.files) == before);

  config.decimals = 9;
  CHECK(cmd_stats(config).exit_code == kExitConfigError);
  config.decimals = 3;

  dir.write("mt/annotations.jsonl", "");
  const auto empty = cmd_stats(config);
  REQUIRE(empty.exit_code == kExitOk);
  const auto header_only = read_file(dir.file("out/relation_distribution_candidate.csv"));
  CHECK(header_only.find("\nliteral,") == std::string::npos);
  CHECK(header_only.find("relation,count,percentage") != std::string::npos);
}

TEST_CASE("diff") {
  TempDir dir;
  auto config = demo_config(dir);
  replace_in(dir, "project.manifest", "candidate.annotations = mt/annotations.jsonl",
             "candidate.annotations = ht/annotations.jsonl");
  replace_in(dir, "project.manifest", "candidate.target = mt/target.txt",
             "candidate.target = ht/target.txt");
  replace_in(dir, "project.manifest", "candidate.target_conllu = mt/target.conllu",
             "candidate.target_conllu = ht/target.conllu");
  replace_in(dir, "project.manifest", "candidate.alignment = mt/corpus.aln",
             "candidate.alignment = ht/corpus.aln");
  const auto same = cmd_diff(config);
  REQUIRE(same.exit_code == kExitOk);
  const auto series = read_file(dir.file("out/edit_distance_series.csv"));
  CHECK(series.find(",1") == std::string::npos);
  CHECK(series.find(",3") == std::string::npos);
  const auto table = read_file(dir.file("out/discrepancy.csv"));
  CHECK(table.find("literal,12,12,") != std::string::npos);
  CHECK(table.find(",0.000\n") != std::string::npos);

  TempDir other;
  auto mismatched = demo_config(other);
  other.write("mt/source.txt", "Peter is six years old .\nthe knife is sharp .\n"
                                "he said the responsibilities .\npeople of Iran .\n");
  replace_in(other, "project.manifest", "candidate.source = source.txt",
             "candidate.source = mt/source.txt");
  const auto bad = cmd_diff(mismatched);
  CHECK(bad.exit_code == kExitDataViolation);
}

TEST_CASE("subcat") {
  TempDir dir;
  auto config = demo_config(dir);
  const auto r = cmd_subcat(config);
  REQUIRE(r.exit_code == kExitOk);
  CHECK(r.files.size() == 22);
  const auto lexical = read_file(dir.file("out/subcat_lexical_shift_reference.csv"));
  CHECK(lexical.find("plural,1") != std::string::npos);
  CHECK(lexical.find("tense,1") != std::string::npos);
  const auto expl = read_file(dir.file("out/explicitation_pos_reference.csv"));
  CHECK(expl.find("PART,1") != std::string::npos);

  config.hypernyms = dir.file("absent.tsv");
  CHECK(cmd_subcat(config).exit_code == kExitConfigError);
}

TEST_CASE("suggest") {
  TempDir dir;
  auto config = demo_config(dir);
  const auto r = cmd_suggest(config);
  REQUIRE(r.exit_code == kExitOk);
  REQUIRE(r.files.size() == 2);
  const auto drafts = read_file(dir.file("out/reference_annotations.jsonl"));
  CHECK(drafts.find("\"provenance\":\"suggested\"") != std::string::npos);
  CHECK(drafts.find("unaligned_reduction") != std::string::npos);

  replace_in(dir, "project.manifest", "reference.alignment = ht/corpus.aln\n", "");
  const auto fallback = cmd_suggest(config);
  CHECK(fallback.exit_code == kExitOk);
  CHECK(std::any_of(fallback.messages.begin(), fallback.messages.end(),
                    [](const std::string& m) { return m.find("diagonal") != std::string::npos; }));
}

TEST_CASE("serve") {
  TempDir dir;
  auto config = demo_config(dir);
  config.port = 0;
  int status = 0;
  int bound = 0;
  const int code = cmd_serve(config, [&](int port, const std::function<void()>& stop) {
    bound = port;
    httplib::Client client("127.0.0.1", port);
    if (auto r = client.Get("/api/health")) status = r->status;
    // Port-busy check while this server holds the port.
    RunConfig busy = config;
    busy.port = port;
    std::vector<std::string> messages;
    CHECK(cmd_serve(busy, {}, &messages) == kExitEnvironmentError);
    stop();
  });
  CHECK(code == kExitOk);
  CHECK(bound > 0);
  CHECK(status == 200);

  config.manifest = dir.file("nope.manifest");
  CHECK(cmd_serve(config) == kExitConfigError);
}

}  // TEST_SUITE
