#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fintopo/poset.hpp"

namespace fintopo {

// Minimal finite model of the circle: two minimal points under two maximal
// points, no other relations.
inline FinitePoset circle_model() {
  return FinitePoset::from_hasse({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

// Five minimal points under two maximal points; cat differs from the
// opposite poset's cat.
inline FinitePoset remark_poset() {
  std::vector<std::string> labels{"x1", "x2", "x3", "x4", "x5", "y1", "y2"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= 5; ++i) {
    covers.emplace_back("x" + std::to_string(i), "y1");
    covers.emplace_back("x" + std::to_string(i), "y2");
  }
  return FinitePoset::from_hasse(labels, covers);
}

inline FinitePoset remark_opposite() { return opposite(remark_poset()); }

struct CorpusEntry {
  std::string name;
  FinitePoset poset;
};

// Built-in path-connected models used by the property suites and the
// paper-suite command.
inline std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"singleton", singleton_poset()});
  out.push_back({"chain2", chain_poset(2)});
  out.push_back({"chain3", chain_poset(3)});
  out.push_back({"fence2", fence_poset(2)});
  out.push_back({"fence3", fence_poset(3)});
  out.push_back({"fence4", fence_poset(4)});
  out.push_back({"circle", circle_model()});
  out.push_back({"remark", remark_poset()});
  out.push_back({"remark-op", remark_opposite()});
  return out;
}

}  // namespace fintopo
