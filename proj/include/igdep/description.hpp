#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igdep/polarity.hpp"

namespace igdep {

/// Flat feature structure: feature name -> atom or variable. Values starting
/// with '?' are variables; their scope is the Dap they appear in.
using FeatureStructure = std::map<std::string, std::string>;

inline bool is_variable(const std::string& value) {
  return !value.empty() && value.front() == '?';
}

/// Union-find over variables with optional atomic bindings. Used both for the
/// public unify() and for the selection-wide unification the parser performs.
class Substitution {
public:
  /// Unifies two values. Returns false on atomic clash; the substitution is
  /// left in an unspecified state in that case, so callers copy before trying.
  bool unify_values(const std::string& a, const std::string& b);

  /// Atom bound to the value, or the representative variable when unbound.
  std::string resolve(const std::string& value) const;

  FeatureStructure apply(const FeatureStructure& fs) const;

  /// Every variable seen so far mapped to its resolved value, skipping
  /// variables that resolve to themselves.
  std::map<std::string, std::string> bindings() const;

private:
  std::string find(const std::string& var) const;

  std::map<std::string, std::string> parent_;
  std::map<std::string, std::string> atom_;
};

/// Renames every variable "?x" to "?x@<scope>" so that variables of
/// different Daps in one selection never alias.
FeatureStructure scope_variables(const FeatureStructure& fs, std::size_t scope);

/// Unifies `into` with `fs` under `subst`. Returns false on clash.
bool unify_into(FeatureStructure& into, const FeatureStructure& fs, Substitution& subst);

struct Unification {
  FeatureStructure features;
  std::map<std::string, std::string> bindings;
};

/// Standard flat unification; std::nullopt on atomic clash.
std::optional<Unification> unify(const FeatureStructure& f, const FeatureStructure& g);

enum class Phon { Anchor, Empty, Internal };

std::string_view to_token(Phon p) noexcept;
Phon phon_from_token(std::string_view token); // throws SyntaxError

struct DapNode {
  std::string id;
  std::string category;
  Polarity polarity = Polarity::Saturated;
  FeatureStructure features;
  Phon phon = Phon::Internal;

  bool operator==(const DapNode&) const = default;
};

/// Polarized tree description anchored to one word.
struct Dap {
  std::string word;
  std::size_t entry = 0; // index among the word's entries in its lexicon
  std::vector<DapNode> nodes;
  std::vector<std::pair<std::string, std::vector<std::string>>> children;
  std::vector<std::pair<std::string, std::string>> dominance;
  std::vector<std::pair<std::string, std::string>> precedence;

  std::optional<std::size_t> index_of(const std::string& id) const;
  std::optional<std::size_t> anchor_index() const;

  /// Lexicon-wide unique name for a node: "<word>#<entry>.<id>".
  std::string qualified_id(const std::string& id) const;

  bool operator==(const Dap&) const = default;
};

enum class ViolationKind {
  MissingAnchor,
  DuplicateAnchor,
  DuplicateNodeId,
  DanglingId,
  MultipleParents,
  ParentCycle,
  DominanceCycle,
  PrecedenceCycle,
  EmptyNotLeaf,
  EmptyCategory,
  NoEntries,
};

std::string_view to_name(ViolationKind k) noexcept;

struct Violation {
  ViolationKind kind;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

/// All well-formedness violations of `d`; empty means valid.
std::vector<Violation> validate_dap(const Dap& d);

} // namespace igdep
