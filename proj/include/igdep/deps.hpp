#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "igdep/model.hpp"

namespace igdep {

enum class DepKind { Linear, NonLinear };

std::string_view to_token(DepKind k) noexcept; // "linear" / "nonlinear"
DepKind dep_kind_from_token(std::string_view token);

struct Dependency {
  std::size_t governor = 0;
  std::size_t dependent = 0;
  std::string label;
  DepKind kind = DepKind::Linear;
  std::string site; // tree node where the saturation happened

  bool operator==(const Dependency&) const = default;
};

/// Directed multigraph over token positions. Cycles and several governors
/// per word are legitimate outcomes.
struct DependencyGraph {
  std::size_t n_tokens = 0;
  std::vector<std::string> tokens;
  std::vector<Dependency> edges;

  DependencyGraph only(DepKind kind) const;
};

/// One Linear edge per +/- saturation (negative owner governs positive
/// owner) and one NonLinear edge per dependency-virtual node (the positive
/// or saturated owner governs it). Context-virtual nodes and saturations
/// inside one word produce nothing. Labels are the site's category.
DependencyGraph extract(const ParseModel& model);

/// Replaces each label by the "funct" feature of its site, when present.
DependencyGraph relabel_with_functions(const DependencyGraph& g, const ParseModel& model);

/// One row per token: 1-based index, form, governors as
/// "gov:label:kind" joined by '|', or "0:root" for ungoverned tokens.
std::string to_tsv(const DependencyGraph& g);
nlohmann::json to_json(const DependencyGraph& g);
/// Linear edges solid above the words, NonLinear dashed below.
std::string to_dot(const DependencyGraph& g);

} // namespace igdep
