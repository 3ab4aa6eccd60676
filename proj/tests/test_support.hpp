#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "transrel/error.hpp"
#include "transrel/model.hpp"
#include "transrel/text.hpp"

namespace transrel::testing {

inline std::string fixture(const std::string& relative) {
  return std::string(TRANSREL_FIXTURES) + "/" + relative;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "transrel-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

  void write(const std::string& name, std::string_view contents) const {
    const auto p = std::filesystem::path(file(name));
    std::filesystem::create_directories(p.parent_path());
    write_file_atomic(p.string(), contents);
  }

 private:
  std::string path_;
};

/// Error code thrown by `f`, or "" when it returns normally.
template <typename F>
std::string error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

/// Copies the demo project into `dir` so tests can edit it.
inline void copy_demo(const TempDir& dir) {
  std::filesystem::copy(fixture("demo"), dir.path(),
                        std::filesystem::copy_options::recursive |
                            std::filesystem::copy_options::overwrite_existing);
}

inline AlignedUnit unit(IndexSet src, IndexSet tgt, RelationLabel relation = RelationLabel::literal,
                        std::optional<std::string> sub = std::nullopt) {
  AlignedUnit u;
  u.src = std::move(src);
  u.tgt = std::move(tgt);
  u.relation = relation;
  u.sub = std::move(sub);
  return u;
}

inline std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  for (auto w : split(text, ' ')) {
    if (!w.empty()) out.emplace_back(w);
  }
  return out;
}

inline SentencePair pair(std::string_view src, std::string_view tgt,
                         std::vector<AlignedUnit> units = {}, std::string id = "s1") {
  SentencePair p;
  p.id = std::move(id);
  p.src_tokens = words(src);
  p.tgt_tokens = words(tgt);
  p.units = std::move(units);
  return p;
}

/// Minimal LingToken: head is 1-based as in CoNLL-U (0 = root).
inline LingToken ling(std::string form, std::string upos, std::size_t head, std::string deprel,
                      std::map<std::string, std::string> feats = {}, std::string lemma = "") {
  LingToken t;
  t.form = form;
  t.lemma = lemma.empty() ? to_lower_ascii(form) : lemma;
  t.upos = std::move(upos);
  t.feats = std::move(feats);
  if (head > 0) t.head = head - 1;
  t.deprel = std::move(deprel);
  return t;
}

/// Random complete-valid sentence: tokens partitioned into random groups,
/// each linked to a random target group or left unaligned.
inline SentencePair random_complete_pair(std::mt19937_64& rng, std::size_t max_len = 12) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  SentencePair p;
  p.id = "s1";
  const std::size_t n = len(rng), m = len(rng);
  for (std::size_t i = 0; i < n; ++i) p.src_tokens.push_back("w" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) p.tgt_tokens.push_back("t" + std::to_string(j));

  const auto shuffled_groups = [&](std::size_t count) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<IndexSet> groups;
    std::size_t i = 0;
    while (i < count) {
      std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(3, count - i));
      IndexSet g(idx.begin() + i, idx.begin() + i + size(rng));
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
      i += groups.back().size();
    }
    return groups;
  };
  auto src_groups = shuffled_groups(n);
  auto tgt_groups = shuffled_groups(m);
  static const RelationLabel kPaired[] = {
      RelationLabel::literal,        RelationLabel::equivalence,   RelationLabel::generalization,
      RelationLabel::transposition,  RelationLabel::modulation,    RelationLabel::lexical_shift,
      RelationLabel::particularization, RelationLabel::uncertain};
  std::uniform_int_distribution<std::size_t> label(0, std::size(kPaired) - 1);
  std::bernoulli_distribution keep_pair(0.7);
  std::size_t t = 0;
  for (auto& g : src_groups) {
    if (t < tgt_groups.size() && keep_pair(rng)) {
      p.units.push_back(unit(std::move(g), std::move(tgt_groups[t++]), kPaired[label(rng)]));
    } else {
      p.units.push_back(unit(std::move(g), {}, RelationLabel::unaligned_reduction));
    }
  }
  for (; t < tgt_groups.size(); ++t) {
    p.units.push_back(unit({}, std::move(tgt_groups[t]), RelationLabel::unaligned_explicitation));
  }
  std::shuffle(p.units.begin(), p.units.end(), rng);
  return p;
}

/// One single-unit sentence per requested unit, so the corpus has exactly the
/// given relation counts and stays complete-valid.
inline void append_units(Corpus& corpus, RelationLabel relation, std::size_t count,
                         const std::string& genre = kUnknownGenre) {
  for (std::size_t k = 0; k < count; ++k) {
    SentencePair p;
    p.id = sentence_id(corpus.sentences.size());
    p.genre = genre;
    if (relation != RelationLabel::unaligned_explicitation) p.src_tokens = {"w"};
    if (relation != RelationLabel::unaligned_reduction) p.tgt_tokens = {"t"};
    p.units.push_back(unit(p.src_tokens.empty() ? IndexSet{} : IndexSet{0},
                           p.tgt_tokens.empty() ? IndexSet{} : IndexSet{0}, relation));
    corpus.sentences.push_back(std::move(p));
  }
}

}  // namespace transrel::testing
