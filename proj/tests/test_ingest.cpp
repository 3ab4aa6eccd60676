#include <doctest.h>

#include <filesystem>

#include "test_support.hpp"
#include "transrel/error.hpp"
#include "transrel/ingest.hpp"
#include "transrel/project.hpp"
#include "transrel/stat_table.hpp"

using namespace transrel;
using namespace transrel::testing;

TEST_SUITE("ingest") {

TEST_CASE("parse_tokenized") {
  auto one = parse_tokenized("彼得 六岁 。\n");
  CHECK(one.value == TokenizedText{{"彼得", "六岁", "。"}});
  CHECK(one.warnings.empty());

  CHECK(parse_tokenized("a b\nc\n").value == TokenizedText{{"a", "b"}, {"c"}});
  CHECK(parse_tokenized("a b\nc").value == TokenizedText{{"a", "b"}, {"c"}});

  auto spaced = parse_tokenized("a  b\n");
  CHECK(spaced.value == TokenizedText{{"a", "b"}});
  REQUIRE(spaced.warnings.size() == 1);
  CHECK(spaced.warnings[0].line == 1);

  CHECK(error_code_of([] { parse_tokenized("a\n\nb\n"); }) == "EMPTY_LINE");
  CHECK(error_code_of([] { parse_tokenized(""); }) == "EMPTY_FILE");
}

TEST_CASE("parse_alignment") {
  const auto edges = parse_alignment("1-0 2-1\n");
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == SentenceEdges{{1, 0}, {2, 1}});

  const auto empty = parse_alignment("\n");
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());

  try {
    parse_alignment("0-0 3-x\n");
    FAIL("accepted a malformed edge");
  } catch (const ParseError& e) {
    CHECK(e.code() == "MALFORMED_EDGE");
    CHECK(e.line() == 1);
    CHECK(e.item() == 2);
  }
  CHECK(error_code_of([] { parse_alignment("3-x\n"); }) == "MALFORMED_EDGE");
  CHECK(error_code_of([] { parse_alignment("34\n"); }) == "MALFORMED_EDGE");
  CHECK(error_code_of([] { parse_alignment("1-1 1-1\n"); }) == "DUPLICATE_EDGE");
}

TEST_CASE("parse_annotations") {
  const auto parsed = parse_annotations(
      R"({"id":"s1","src":[14,12,13],"tgt":[13,14],"relation":"generalization"})"
      "\n");
  const auto& units = parsed.value.units.at("s1");
  REQUIRE(units.size() == 1);
  CHECK(units[0].src == IndexSet{12, 13, 14});
  CHECK(units[0].tgt == IndexSet{13, 14});
  CHECK(units[0].relation == RelationLabel::generalization);
  CHECK(units[0].provenance == Provenance::manual);

  const auto trimmed =
      parse_annotations(R"({"id":"s1","src":[0],"tgt":[0],"relation":"literal "})");
  CHECK(trimmed.value.units.at("s1")[0].relation == RelationLabel::literal);

  CHECK(error_code_of([] {
          parse_annotations(R"({"id":"s1","src":[0],"tgt":[0],"relation":"paraphrase"})");
        }) == "UNKNOWN_RELATION");
  CHECK(error_code_of([] {
          parse_annotations(R"({"id":"s1","src":[-1],"tgt":[0],"relation":"literal"})");
        }) == "BAD_INDEX");
  CHECK(error_code_of([] {
          parse_annotations(
              R"({"id":"s1","src":[0],"tgt":[0],"relation":"equivalence","sub":"tense"})");
        }) == "SUB_TAG_MISMATCH");
  CHECK(error_code_of([] { parse_annotations("{not json\n"); }) == "MALFORMED_RECORD");

  const auto warned = parse_annotations(
      "\n" R"({"id":"s1","src":[0],"tgt":[0],"relation":"literal","note":"x"})");
  CHECK(warned.warnings.size() == 2);
}

TEST_CASE("annotation provenance and sub-category round-trip") {
  Corpus c;
  auto p = pair("a b", "x", {unit({0}, {0}, RelationLabel::lexical_shift, "plural"),
                             unit({1}, {}, RelationLabel::unaligned_reduction)});
  p.units[1].provenance = Provenance::suggested;
  c.sentences.push_back(p);
  const std::string text = serialize_annotations(c);
  CHECK(text.find("\"provenance\":\"suggested\"") != std::string::npos);
  const auto back = parse_annotations(text);
  CHECK(back.value.units.at("s1") == p.units);
  Corpus again = c;
  again.sentences[0].units = back.value.units.at("s1");
  CHECK(serialize_annotations(again) == text);
}

TEST_CASE("parse_conllu") {
  const auto parsed = parse_conllu(
      "# text = he runs\n"
      "1\the\the\tPRON\t_\tNumber=Plur|Tense=Past\t2\tnsubj\t_\t_\n"
      "2\truns\trun\tVERB\t_\t_\t0\troot\t_\t_\n"
      "\n");
  REQUIRE(parsed.value.size() == 1);
  const auto& s = parsed.value[0];
  REQUIRE(s.size() == 2);
  CHECK(s[0].head == TokenIndex{1});
  CHECK(s[1].is_root());
  CHECK(s[0].feats.size() == 2);
  CHECK(s[0].has_feature("Tense", "Past"));

  const auto mwt = parse_conllu(
      "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdo\tdo\tAUX\t_\t_\t0\troot\t_\t_\n"
      "2\tn't\tnot\tPART\t_\t_\t1\tadvmod\t_\t_\n");
  CHECK(mwt.value[0].size() == 2);
  CHECK(mwt.warnings.size() == 1);

  CHECK(error_code_of([] { parse_conllu("1\the\tPRON\n"); }) == "COLUMN_COUNT");
  CHECK(error_code_of([] {
          parse_conllu("1\the\the\tPRON\t_\t_\tx\tnsubj\t_\t_\n");
        }) == "NONNUMERIC_HEAD");
  CHECK(error_code_of([] {
          parse_conllu("2\the\the\tPRON\t_\t_\t0\troot\t_\t_\n");
        }) == "BAD_ID");
}

TEST_CASE("round-trip on every fixture file") {
  const std::string demo = fixture("demo");
  for (const auto* name : {"source.txt", "ht/target.txt", "mt/target.txt"}) {
    const std::string text = read_file(demo + "/" + name);
    CHECK(serialize_tokenized(parse_tokenized(text).value) == text);
  }
  for (const auto* name : {"ht/corpus.aln", "mt/corpus.aln"}) {
    const std::string text = read_file(demo + "/" + name);
    CHECK(serialize_alignment(parse_alignment(text)) == text);
  }
  for (const auto* name : {"source.conllu", "ht/target.conllu", "mt/target.conllu"}) {
    const std::string text = read_file(demo + "/" + name);
    CHECK(serialize_conllu(parse_conllu(text).value) == text);
  }
  const auto project = load_project(load_manifest(demo + "/project.manifest"));
  for (const auto* side : {"ht", "mt"}) {
    const std::string text = read_file(demo + "/" + side + "/annotations.jsonl");
    const Corpus& c = std::string(side) == "ht" ? project.reference.corpus
                                                 : project.candidate.corpus;
    CHECK(serialize_annotations(c) == text);
  }
}

TEST_CASE("manifest parsing") {
  const auto m = parse_manifest(
      "# comment\n"
      "project = demo\n"
      "reference.source = a/src.txt\n"
      "reference.target = a/tgt.txt\n"
      "reference.annotations = a/ann.jsonl\n"
      "candidate.source = b/src.txt\n"
      "candidate.target = b/tgt.txt\n"
      "candidate.annotations = b/ann.jsonl\n"
      "genre.news = 1-3, 5\n"
      "genre.laws = 4\n",
      "/base");
  CHECK(m.project == "demo");
  CHECK(m.reference.source == "/base/a/src.txt");
  CHECK_FALSE(m.reference.alignment.has_value());
  REQUIRE(m.genres.size() == 3);
  CHECK(m.genres[0].genre == "news");
  CHECK(m.genres[0].first == 1);
  CHECK(m.genres[0].last == 3);

  CHECK(error_code_of([] { parse_manifest("project demo\n", "/"); }) == "MANIFEST_SYNTAX");
  CHECK(error_code_of([] { parse_manifest("project = x\nbogus = 1\n", "/"); }) ==
        "MANIFEST_UNKNOWN_KEY");
  CHECK(error_code_of([] { parse_manifest("project = x\n", "/"); }) == "MANIFEST_MISSING_KEY");
  CHECK(error_code_of([] { load_manifest("/nonexistent/project.manifest"); }) ==
        "UNREADABLE_FILE");
}

TEST_CASE("load_project on the demo fixture") {
  const auto project = load_project(load_manifest(fixture("demo/project.manifest")));
  const auto& ht = project.reference.corpus;
  const auto& mt = project.candidate.corpus;
  CHECK(ht.name == "HT");
  CHECK(mt.name == "MT");
  REQUIRE(ht.sentences.size() == 4);
  CHECK(ht.sentences[0].id == "s1");
  CHECK(ht.sentences[1].genre == "education");
  CHECK(ht.sentences[2].genre == "news");
  CHECK(ht.sentences[0].src_ling.has_value());
  CHECK(project.reference.has_alignment);
  CHECK(project.reference.edges.size() == 4);
  CHECK(project.manifest.content_hash.size() == 16);
}

TEST_CASE("load_project cross-checks") {
  SUBCASE("shared-source violation names the differing sentence") {
    TempDir dir;
    copy_demo(dir);
    auto manifest_text = read_file(dir.file("project.manifest"));
    const std::string mt_source =
        "Peter is six years old .\nthe knife is sharp .\nhe said the responsibilities .\n"
        "people of Iran .\n";
    dir.write("mt/source.txt", mt_source);
    const auto pos = manifest_text.find("candidate.source = source.txt");
    manifest_text.replace(pos, std::string("candidate.source = source.txt").size(),
                          "candidate.source = mt/source.txt");
    dir.write("project.manifest", manifest_text);
    try {
      load_project(load_manifest(dir.file("project.manifest")));
      FAIL("accepted differing sources");
    } catch (const SharedSourceViolation& e) {
      CHECK(e.code() == "SHARED_SOURCE_VIOLATION");
      CHECK(e.ids() == std::vector<std::string>{"s3"});
    }
  }
  SUBCASE("CoNLL-U token count must match the token file") {
    TempDir dir;
    copy_demo(dir);
    auto conllu = read_file(dir.file("mt/target.conllu"));
    conllu.insert(conllu.find("\n\n") + 1, "6\t!\t!\tPUNCT\t_\t_\t4\tpunct\t_\t_\n");
    dir.write("mt/target.conllu", conllu);
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "SENTENCE_COUNT_MISMATCH");
  }
  SUBCASE("alignment edges must be in bounds") {
    TempDir dir;
    copy_demo(dir);
    dir.write("ht/corpus.aln", "0-0 2-9 5-2\n0-0\n0-0\n0-0\n");
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "EDGE_OUT_OF_BOUNDS");
  }
  SUBCASE("annotation for an unknown sentence") {
    TempDir dir;
    copy_demo(dir);
    auto ann = read_file(dir.file("ht/annotations.jsonl"));
    ann += R"({"id":"s9","src":[0],"tgt":[0],"relation":"literal"})" "\n";
    dir.write("ht/annotations.jsonl", ann);
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "UNKNOWN_SENTENCE");
  }
  SUBCASE("overlapping annotation fails draft validation") {
    TempDir dir;
    copy_demo(dir);
    auto ann = read_file(dir.file("ht/annotations.jsonl"));
    ann += R"({"id":"s1","src":[0],"tgt":[],"relation":"unaligned_reduction"})" "\n";
    dir.write("ht/annotations.jsonl", ann);
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "ANNOTATION_INVALID");
  }
  SUBCASE("genre map gaps are rejected") {
    TempDir dir;
    copy_demo(dir);
    auto manifest_text = read_file(dir.file("project.manifest"));
    manifest_text.replace(manifest_text.find("genre.news = 3-4"), 16, "genre.news = 4");
    dir.write("project.manifest", manifest_text);
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "GENRE_MAP");
  }
  SUBCASE("missing annotations allowed only on request") {
    TempDir dir;
    copy_demo(dir);
    std::filesystem::remove(dir.file("mt/annotations.jsonl"));
    CHECK(error_code_of([&] { load_project(load_manifest(dir.file("project.manifest"))); }) ==
          "UNREADABLE_FILE");
    const auto p = load_project(load_manifest(dir.file("project.manifest")),
                                {.require_annotations = false});
    CHECK_FALSE(p.candidate.annotations_present);
    CHECK(p.candidate.corpus.sentences[0].units.empty());
  }
}

TEST_CASE("export_table formats") {
  StatTable t;
  t.name = "demo";
  t.row_header = "relation";
  t.columns = {{"count", ColumnKind::count}, {"percentage", ColumnKind::real}};
  t.rows.push_back({"literal", {6221.0, 76.8951}});
  t.rows.push_back({"a,\"b\"", {1.0, std::nullopt}});

  const auto csv = export_table(t, TableFormat::csv, {{"tool", "transrel"}});
  CHECK(csv ==
        "# tool=transrel\n"
        "relation,count,percentage\n"
        "literal,6221,76.895\n"
        "\"a,\"\"b\"\"\",1,\n");

  const auto tsv = export_table(t, TableFormat::tsv);
  CHECK(tsv.find("literal\t6221\t76.895\n") != std::string::npos);

  const auto jsonl = export_table(t, TableFormat::jsonl, {{"tool", "transrel"}});
  CHECK(jsonl ==
        "{\"_meta\":{\"tool\":\"transrel\"}}\n"
        "{\"relation\":\"literal\",\"count\":6221,\"percentage\":76.895}\n"
        "{\"relation\":\"a,\\\"b\\\"\",\"count\":1,\"percentage\":null}\n");

  StatTable empty = t;
  empty.rows.clear();
  CHECK(export_table(empty, TableFormat::csv) == "relation,count,percentage\n");
}

}  // TEST_SUITE
