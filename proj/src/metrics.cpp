#include "igdep/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "igdep/error.hpp"

namespace igdep {

using nlohmann::json;

namespace {

std::vector<Block> runs(const std::vector<std::size_t>& sorted) {
  std::vector<Block> out;
  for (auto i : sorted) {
    if (!out.empty() && out.back().last + 1 == i)
      out.back().last = i;
    else
      out.push_back({i, i});
  }
  return out;
}

std::vector<Reach> all_reaches(const DependencyGraph& g) {
  std::vector<Reach> out;
  for (std::size_t w = 0; w < g.n_tokens; ++w)
    out.push_back(reach(g, w));
  return out;
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.empty();
}

// Number of alternations when the two disjoint sorted sets are merged;
// four or more runs means some a1 < b1 < a2 < b2.
bool interleave(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t i = 0, j = 0, changes = 0;
  int last = -1;
  while (i < a.size() || j < b.size()) {
    int side = (j == b.size() || (i < a.size() && a[i] < b[j])) ? 0 : 1;
    (side == 0 ? i : j)++;
    if (side != last) {
      ++changes;
      last = side;
    }
  }
  return changes >= 4;
}

} // namespace

Reach reach(const DependencyGraph& g, std::size_t w) {
  if (w >= g.n_tokens)
    throw IndexOutOfRange("token " + std::to_string(w) + " out of range (" +
                          std::to_string(g.n_tokens) + " tokens)");
  std::vector<char> seen(g.n_tokens, 0);
  std::vector<std::size_t> stack{w};
  seen[w] = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges)
      if (e.governor == u && !seen[e.dependent]) {
        seen[e.dependent] = 1;
        stack.push_back(e.dependent);
      }
  }
  Reach r;
  r.word = w;
  for (std::size_t i = 0; i < g.n_tokens; ++i)
    if (seen[i])
      r.members.push_back(i);
  r.blocks = runs(r.members);
  return r;
}

bool is_connected(const DependencyGraph& g) {
  if (g.n_tokens <= 1)
    return true;
  std::vector<std::size_t> parent(g.n_tokens);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.n_tokens;
  for (const auto& e : g.edges) {
    auto a = find(e.governor), b = find(e.dependent);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::size_t block_degree(const DependencyGraph& g) {
  if (g.n_tokens == 0)
    throw Error("block degree of an empty sentence is undefined");
  std::size_t best = 0;
  for (std::size_t w = 0; w < g.n_tokens; ++w)
    best = std::max(best, reach(g, w).blocks.size());
  return best;
}

bool is_projective(const DependencyGraph& g) {
  return g.n_tokens == 0 || block_degree(g) == 1;
}

bool is_well_nested(const DependencyGraph& g) {
  auto rs = all_reaches(g);
  for (std::size_t u = 0; u < rs.size(); ++u)
    for (std::size_t v = u + 1; v < rs.size(); ++v)
      if (disjoint(rs[u].members, rs[v].members) && interleave(rs[u].members, rs[v].members))
        return false;
  return true;
}

MetricsReport measure(const DependencyGraph& g) {
  MetricsReport r;
  r.connected = is_connected(g);
  r.well_nested = is_well_nested(g);
  if (g.n_tokens == 0)
    return r;
  auto rs = all_reaches(g);
  r.block_degree = 0;
  for (const auto& x : rs)
    if (x.blocks.size() > r.block_degree) {
      r.block_degree = x.blocks.size();
      r.worst_word = x.word;
      r.worst_blocks = x.blocks;
    }
  r.projective = r.block_degree == 1;
  for (std::size_t u = 0; u < rs.size(); ++u)
    for (std::size_t v = u + 1; v < rs.size(); ++v) {
      const auto& a = rs[u].members;
      const auto& b = rs[v].members;
      if (disjoint(a, b) || std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
          std::includes(b.begin(), b.end(), a.begin(), a.end()))
        continue;
      r.overlap_pairs.emplace_back(u, v);
    }
  return r;
}

json to_json(const MetricsReport& r) {
  json blocks = json::array();
  for (const auto& b : r.worst_blocks)
    blocks.push_back(json::array({b.first, b.last}));
  return {{"connected", r.connected},       {"projective", r.projective},
          {"block_degree", r.block_degree}, {"well_nested", r.well_nested},
          {"worst_word", r.worst_word},     {"worst_blocks", std::move(blocks)}};
}

} // namespace igdep
