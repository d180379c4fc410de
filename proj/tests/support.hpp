#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "igdep/deps.hpp"
#include "igdep/engine.hpp"
#include "igdep/grammar.hpp"

namespace igdep::test {

inline std::string data_path(const std::string& name) {
  return std::string(IGDEP_TEST_DATA) + "/" + name;
}

inline std::string asset_path(const std::string& name) {
  return std::string(IGDEP_ASSETS) + "/" + name;
}

/// Edges as "gov>dep:label:kind" words, sorted, for readable comparisons.
inline std::vector<std::string> edge_words(const DependencyGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges)
    out.push_back(g.tokens[e.governor] + ">" + g.tokens[e.dependent] + ":" + e.label + ":" +
                  std::string(to_token(e.kind)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline ParseResult parse(const GrammarLexicon& g, const std::string& sentence) {
  SearchLimits limits;
  limits.max_models = 1000;
  auto tokens = tokenize(sentence);
  return parse_all(g, tokens, limits);
}

inline std::set<std::string> keys(const std::vector<ParseModel>& models) {
  std::set<std::string> out;
  for (const auto& m : models)
    out.insert(m.canonical_key());
  return out;
}

} // namespace igdep::test
