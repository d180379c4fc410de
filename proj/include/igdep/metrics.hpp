#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igdep/deps.hpp"

namespace igdep {

/// Inclusive token interval.
struct Block {
  std::size_t first = 0;
  std::size_t last = 0;

  bool operator==(const Block&) const = default;
};

/// Tokens reachable from a word (the word included), and their maximal runs.
struct Reach {
  std::size_t word = 0;
  std::vector<std::size_t> members; // sorted
  std::vector<Block> blocks;
};

Reach reach(const DependencyGraph& g, std::size_t w); // throws IndexOutOfRange

/// Weak connectivity; graphs of at most one token are connected.
bool is_connected(const DependencyGraph& g);

/// Maximum number of blocks in any word's reach.
std::size_t block_degree(const DependencyGraph& g);

bool is_projective(const DependencyGraph& g);

/// No two words with disjoint reaches interleave in sentence order.
bool is_well_nested(const DependencyGraph& g);

struct MetricsReport {
  bool connected = true;
  bool projective = true;
  std::size_t block_degree = 1;
  bool well_nested = true;
  std::size_t worst_word = 0;
  std::vector<Block> worst_blocks;
  /// Word pairs whose reaches partially overlap; well-nestedness does not
  /// constrain them.
  std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs;
};

MetricsReport measure(const DependencyGraph& g);

/// {connected, projective, block_degree, well_nested, worst_word, worst_blocks}
nlohmann::json to_json(const MetricsReport& r);

} // namespace igdep
