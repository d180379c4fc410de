#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "igdep/error.hpp"
#include "igdep/grammar.hpp"
#include "igdep/model.hpp"

namespace igdep {

struct SearchLimits {
  std::size_t max_merges = 10000;
  std::size_t max_models = 16;
  std::chrono::milliseconds timeout{5000};
};

class LimitExceeded : public Error {
public:
  LimitExceeded(const std::string& what, SearchLimits limits)
      : Error(what), limits_(limits) {}
  const SearchLimits& limits() const noexcept { return limits_; }

private:
  SearchLimits limits_;
};

/// Order in which the agenda and the merge candidates are explored. Both
/// orders find the same models; Reversed exists to check exactly that.
enum class Exploration { Canonical, Reversed };

struct SearchOptions {
  bool allow_intra_dap = false;
  Exploration exploration = Exploration::Canonical;
};

/// Why a sentence failed, for grammaticality diagnostics.
struct NoParseDiagnostic {
  std::size_t selections_tried = 0;
  std::size_t total_nodes = 0;          // description nodes in the best selection
  std::size_t best_saturated = 0;       // most description nodes saturated at once
  std::vector<std::string> unsaturated; // display names left over at that point
  std::size_t best_selection = 0;
};

struct ParseResult {
  std::vector<ParseModel> models;
  std::size_t merges = 0;
  NoParseDiagnostic diagnostic; // meaningful when models is empty

  bool parsed() const noexcept { return !models.empty(); }
};

/// Models of one lexical selection. Throws LimitExceeded.
ParseResult parse_selection(std::span<const std::string> tokens, const LexicalSelection& selection,
                            std::size_t selection_index, const SearchLimits& limits = {},
                            const SearchOptions& options = {});

/// Models over every lexical selection, in selection order, deduplicated.
/// Throws UnknownWord and LimitExceeded.
ParseResult parse_all(const GrammarLexicon& g, std::span<const std::string> tokens,
                      const SearchLimits& limits = {}, const SearchOptions& options = {});

} // namespace igdep
