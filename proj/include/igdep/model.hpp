#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igdep/description.hpp"
#include "igdep/grammar.hpp"
#include "igdep/polarity.hpp"

namespace igdep {

/// A description node of a lexical selection: token position + node index in
/// that token's Dap.
struct DescRef {
  std::size_t token = 0;
  std::size_t node = 0;

  auto operator<=>(const DescRef&) const = default;
};

struct Member {
  DescRef ref;
  std::string id;        // node id as written in the grammar
  std::string qualified; // lexicon-wide id, see Dap::qualified_id
  Polarity polarity = Polarity::Saturated;
  Phon phon = Phon::Internal;

  bool operator==(const Member&) const = default;
};

/// Description nodes superposed on one tree node, sorted by ref.
using MergeSet = std::vector<Member>;

bool is_saturation_valid(const MergeSet& s);

/// "A2@1": node id at token position.
std::string display_name(const Member& m);

struct TreeNode {
  std::string id; // "n<k>", preorder
  std::string category;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  MergeSet members;
  FeatureStructure features; // unified over members, variables resolved
  std::optional<std::size_t> token; // set on anchor leaves
  bool empty = false;               // phonologically empty leaf

  bool is_leaf() const noexcept { return children.empty(); }
  bool operator==(const TreeNode&) const = default;
};

/// A saturated tree model of one lexical selection. nodes[0] is the root and
/// nodes are stored in preorder.
struct ParseModel {
  std::vector<std::string> tokens;
  std::vector<Dap> selection;
  std::size_t selection_index = 0;
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> yield_order;

  const TreeNode& root() const { return nodes.front(); }
  const TreeNode* find(const std::string& tree_id) const;

  /// Identity of the model up to renaming of tree nodes: ordered tree shape,
  /// categories and merge sets.
  std::string canonical_key() const;
};

/// Partition of the selection's description nodes plus ordered children,
/// as produced by a search. Block indices are arbitrary.
struct ModelSkeleton {
  std::vector<std::vector<DescRef>> blocks;
  std::vector<std::vector<std::size_t>> children;
  std::size_t root = 0;
};

/// Builds a ParseModel in preorder with unified features. std::nullopt when
/// the blocks' features do not unify.
std::optional<ParseModel> materialize(std::span<const std::string> tokens,
                                      const LexicalSelection& selection,
                                      std::size_t selection_index,
                                      const ModelSkeleton& skeleton);

/// Re-checks every model invariant from scratch against model.selection.
/// Returns human-readable problems; empty means the model is valid.
std::vector<std::string> verify_model(const ParseModel& model);

/// "(S (NP jean) (VN (CLIT en) (V connaît)) ...)"; empty leaves print as ε.
std::string to_bracketed(const ParseModel& model);

/// {tokens, selection, tree, merge_map, yield_order, bracketed}
nlohmann::json to_json(const ParseModel& model);

} // namespace igdep
