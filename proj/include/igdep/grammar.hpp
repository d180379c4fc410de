#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "igdep/description.hpp"
#include "igdep/error.hpp"

namespace igdep {

struct EntryViolation {
  std::string word;
  std::size_t entry = 0;
  Violation violation;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<EntryViolation> violations);
  const std::vector<EntryViolation>& violations() const noexcept { return violations_; }

private:
  std::vector<EntryViolation> violations_;
};

/// Word form -> lexical entries. Immutable once loaded.
struct GrammarLexicon {
  std::string name;
  std::map<std::string, std::string> metadata;
  std::map<std::string, std::vector<Dap>> entries;

  const std::vector<Dap>* find(const std::string& word) const;
};

struct LoadOptions {
  /// Run validate_dap on every entry and throw ValidationError on failure.
  bool validate = true;
};

GrammarLexicon load_grammar(std::istream& source, const LoadOptions& opts = {});
GrammarLexicon load_grammar_string(std::string_view text, const LoadOptions& opts = {});
GrammarLexicon load_grammar_file(const std::filesystem::path& path, const LoadOptions& opts = {});

std::string save_grammar(const GrammarLexicon& g);

/// The toy French grammar bundled with the library.
std::string_view toy_grammar_text() noexcept;
const GrammarLexicon& toy_grammar();

/// Every validate_dap violation in the lexicon, plus empty entry lists.
std::vector<EntryViolation> validate_grammar(const GrammarLexicon& g);

struct EntryRef {
  std::string word;
  std::size_t entry = 0;

  bool operator==(const EntryRef&) const = default;
};

/// Entries with no +, - or dependency-virtual node. An empty result
/// guarantees weakly connected dependency graphs.
std::vector<EntryRef> check_connectivity_condition(const GrammarLexicon& g);

std::vector<std::string> tokenize(std::string_view sentence);

/// One Dap per token, in sentence order.
struct LexicalSelection {
  std::vector<const Dap*> picks;
};

/// Lazy odometer over the Cartesian product of the tokens' entries, last
/// token varying fastest.
class SelectionEnumerator {
public:
  /// Throws UnknownWord for the first token missing from the lexicon.
  SelectionEnumerator(const GrammarLexicon& g, std::span<const std::string> tokens);

  std::optional<LexicalSelection> next();
  std::size_t total() const noexcept;

private:
  std::vector<const std::vector<Dap>*> choices_;
  std::vector<std::size_t> cursor_;
  bool done_ = false;
};

std::vector<LexicalSelection> lexical_selections(const GrammarLexicon& g,
                                                 std::span<const std::string> tokens);

} // namespace igdep
