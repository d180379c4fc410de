#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "igdep/engine.hpp"
#include "igdep/grammar.hpp"
#include "igdep/model.hpp"

namespace igdep {

inline constexpr std::size_t kOracleNodeCap = 14;

class OracleCapExceeded : public Error {
public:
  explicit OracleCapExceeded(std::size_t nodes)
      : Error("oracle refuses a selection of " + std::to_string(nodes) +
              " description nodes (cap " + std::to_string(kOracleNodeCap) + ")"),
        nodes_(nodes) {}
  std::size_t nodes() const noexcept { return nodes_; }

private:
  std::size_t nodes_;
};

/// Exhaustive reference parser for tests: enumerates every set partition of
/// the selection's description nodes and every ordering of every node's
/// children, keeping the candidates that verify_model accepts. Only
/// `options.allow_intra_dap` is honoured. Models are sorted by canonical key.
std::vector<ParseModel> oracle_parse(const GrammarLexicon& g, std::span<const std::string> tokens,
                                     const SearchOptions& options = {});

} // namespace igdep
