#include "transrel/model.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

namespace transrel {

const SentencePair* Corpus::find(const std::string& id) const {
  const auto it = std::find_if(sentences.begin(), sentences.end(),
                               [&](const SentencePair& s) { return s.id == id; });
  return it == sentences.end() ? nullptr : &*it;
}

SentencePair* Corpus::find(const std::string& id) {
  return const_cast<SentencePair*>(std::as_const(*this).find(id));
}

std::string sentence_id(std::size_t zero_based) {
  return "s" + std::to_string(zero_based + 1);
}

void sort_units(std::vector<AlignedUnit>& units) {
  static constexpr auto kLast = std::numeric_limits<TokenIndex>::max();
  const auto key = [](const AlignedUnit& u) {
    return std::make_tuple(u.src.empty() ? kLast : u.src.front(),
                           u.tgt.empty() ? kLast : u.tgt.front());
  };
  std::stable_sort(units.begin(), units.end(),
                   [&](const AlignedUnit& a, const AlignedUnit& b) {
                     return key(a) < key(b);
                   });
}

std::vector<std::string> genres_in(const Corpus& corpus) {
  std::set<std::string> present;
  for (const auto& s : corpus.sentences) present.insert(s.genre);
  std::vector<std::string> ordered;
  for (const auto& g : predefined_genres()) {
    if (present.erase(g) > 0) ordered.push_back(g);
  }
  ordered.insert(ordered.end(), present.begin(), present.end());
  return ordered;
}

}  // namespace transrel
