#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "igdep/deps.hpp"
#include "igdep/engine.hpp"

namespace igdep::cli {

enum class Format { Tsv, Json, Dot, Bracketed };

Format format_from_token(const std::string& token);

/// Exactly one of sentence / corpus_path is set for parse and corpus.
struct RunConfig {
  std::optional<std::string> grammar_path; // bundled toy grammar when empty
  std::optional<std::string> sentence;
  std::optional<std::string> corpus_path;
  Format format = Format::Tsv;
  bool all_models = false;
  bool label_funct = false;
  SearchLimits limits;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoParse = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitLimit = 3;

/// One corpus line: `<ok|bad>\t<sentence>[\t<gov:dep:label:kind>;...]`,
/// indices 1-based as in the TSV export.
struct CorpusRecord {
  std::size_t line = 0;
  bool expect_ok = true;
  std::string sentence;
  std::optional<std::vector<Dependency>> edges; // site left empty
};

/// Skips blank lines and '#' comments. Throws SyntaxError.
std::vector<CorpusRecord> read_corpus(std::istream& in);

/// Edges compared as multisets of (governor, dependent, label, kind).
bool same_edges(const std::vector<Dependency>& a, const std::vector<Dependency>& b);

int cmd_parse(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& grammar_path, std::ostream& out, std::ostream& err);
int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace igdep::cli
