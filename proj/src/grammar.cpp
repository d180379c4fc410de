#include "igdep/grammar.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace igdep {

using nlohmann::json;

namespace {

std::string describe(const std::vector<EntryViolation>& vs) {
  std::ostringstream os;
  os << "grammar validation failed:";
  for (const auto& v : vs)
    os << " [" << v.word << "#" << v.entry << " " << to_name(v.violation.kind) << " "
       << v.violation.detail << "]";
  return os.str();
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw SyntaxError(where + ": missing key '" + key + "'");
  return *it;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const json& dap, const char* key,
                                                            const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!dap.contains(key))
    return out;
  for (const auto& p : dap.at(key)) {
    if (!p.is_array() || p.size() != 2)
      throw SyntaxError(where + ": '" + key + "' items must be [a, b] pairs");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

Dap read_dap(const json& j, const std::string& word, std::size_t entry) {
  const std::string where = word + "#" + std::to_string(entry);
  if (!j.is_object())
    throw SyntaxError(where + ": entry must be an object");
  Dap d;
  d.word = word;
  d.entry = entry;
  for (const auto& jn : require(j, "nodes", where)) {
    DapNode n;
    n.id = require(jn, "id", where).get<std::string>();
    n.category = require(jn, "cat", where).get<std::string>();
    n.polarity = polarity_from_token(require(jn, "pol", where).get<std::string>());
    n.phon = phon_from_token(jn.value("phon", std::string("internal")));
    if (auto it = jn.find("feats"); it != jn.end())
      n.features = it->get<FeatureStructure>();
    d.nodes.push_back(std::move(n));
  }
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) {
      if (!c.is_array() || c.size() != 2 || !c[1].is_array())
        throw SyntaxError(where + ": 'children' items must be [parent, [child...]]");
      d.children.emplace_back(c[0].get<std::string>(), c[1].get<std::vector<std::string>>());
    }
  }
  d.dominance = read_pairs(j, "dominance", where);
  d.precedence = read_pairs(j, "precedence", where);
  return d;
}

json write_dap(const Dap& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) {
    json jn = {{"id", n.id},
               {"cat", n.category},
               {"pol", std::string(to_token(n.polarity))},
               {"phon", std::string(to_token(n.phon))}};
    if (!n.features.empty())
      jn["feats"] = n.features;
    nodes.push_back(std::move(jn));
  }
  json children = json::array();
  for (const auto& [p, kids] : d.children)
    children.push_back(json::array({p, kids}));
  auto pairs = [](const auto& v) {
    json a = json::array();
    for (const auto& [x, y] : v)
      a.push_back(json::array({x, y}));
    return a;
  };
  return {{"nodes", std::move(nodes)},
          {"children", std::move(children)},
          {"dominance", pairs(d.dominance)},
          {"precedence", pairs(d.precedence)}};
}

GrammarLexicon from_json(const json& doc, const LoadOptions& opts) {
  if (!doc.is_object())
    throw SyntaxError("grammar document must be an object");
  GrammarLexicon g;
  g.name = doc.value("name", std::string());
  if (auto it = doc.find("metadata"); it != doc.end())
    g.metadata = it->get<std::map<std::string, std::string>>();
  const auto& words = require(doc, "words", "grammar");
  if (!words.is_object())
    throw SyntaxError("grammar: 'words' must be an object");
  for (const auto& [form, list] : words.items()) {
    if (!list.is_array())
      throw SyntaxError(form + ": entries must be a list");
    auto& daps = g.entries[form];
    for (std::size_t i = 0; i < list.size(); ++i)
      daps.push_back(read_dap(list[i], form, i));
  }
  if (opts.validate) {
    auto violations = validate_grammar(g);
    if (!violations.empty())
      throw ValidationError(std::move(violations));
  }
  return g;
}

} // namespace

ValidationError::ValidationError(std::vector<EntryViolation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

const std::vector<Dap>* GrammarLexicon::find(const std::string& word) const {
  auto it = entries.find(word);
  return it == entries.end() ? nullptr : &it->second;
}

GrammarLexicon load_grammar(std::istream& source, const LoadOptions& opts) {
  json doc;
  try {
    doc = json::parse(source);
    return from_json(doc, opts);
  } catch (const json::exception& e) {
    throw SyntaxError(std::string("malformed grammar document: ") + e.what());
  }
}

GrammarLexicon load_grammar_string(std::string_view text, const LoadOptions& opts) {
  std::istringstream in{std::string(text)};
  return load_grammar(in, opts);
}

GrammarLexicon load_grammar_file(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open grammar file " + path.string());
  return load_grammar(in, opts);
}

std::string save_grammar(const GrammarLexicon& g) {
  json words = json::object();
  for (const auto& [form, daps] : g.entries) {
    json list = json::array();
    for (const auto& d : daps)
      list.push_back(write_dap(d));
    words[form] = std::move(list);
  }
  json doc = {{"name", g.name}, {"words", std::move(words)}};
  if (!g.metadata.empty())
    doc["metadata"] = g.metadata;
  return doc.dump(2);
}

const GrammarLexicon& toy_grammar() {
  static const GrammarLexicon g = load_grammar_string(toy_grammar_text());
  return g;
}

std::vector<EntryViolation> validate_grammar(const GrammarLexicon& g) {
  std::vector<EntryViolation> out;
  for (const auto& [form, daps] : g.entries) {
    if (daps.empty())
      out.push_back({form, 0, {ViolationKind::NoEntries, form}});
    for (const auto& d : daps)
      for (auto& v : validate_dap(d))
        out.push_back({form, d.entry, std::move(v)});
  }
  return out;
}

std::vector<EntryRef> check_connectivity_condition(const GrammarLexicon& g) {
  std::vector<EntryRef> out;
  for (const auto& [form, daps] : g.entries)
    for (const auto& d : daps) {
      bool ok = false;
      for (const auto& n : d.nodes)
        ok = ok || n.polarity == Polarity::Positive || n.polarity == Polarity::Negative ||
             n.polarity == Polarity::VirtualDep;
      if (!ok)
        out.push_back({form, d.entry});
    }
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  for (std::string tok; in >> tok;)
    out.push_back(std::move(tok));
  return out;
}

SelectionEnumerator::SelectionEnumerator(const GrammarLexicon& g,
                                         std::span<const std::string> tokens) {
  for (const auto& t : tokens) {
    const auto* daps = g.find(t);
    if (!daps)
      throw UnknownWord(t);
    choices_.push_back(daps);
    if (daps->empty())
      done_ = true;
  }
  cursor_.assign(tokens.size(), 0);
}

std::size_t SelectionEnumerator::total() const noexcept {
  std::size_t n = 1;
  for (const auto* c : choices_)
    n *= c->size();
  return n;
}

std::optional<LexicalSelection> SelectionEnumerator::next() {
  if (done_)
    return std::nullopt;
  LexicalSelection sel;
  for (std::size_t i = 0; i < choices_.size(); ++i)
    sel.picks.push_back(&(*choices_[i])[cursor_[i]]);

  // advance the odometer
  std::size_t i = cursor_.size();
  while (i > 0) {
    --i;
    if (++cursor_[i] < choices_[i]->size())
      return sel;
    cursor_[i] = 0;
  }
  done_ = true;
  return sel;
}

std::vector<LexicalSelection> lexical_selections(const GrammarLexicon& g,
                                                 std::span<const std::string> tokens) {
  std::vector<LexicalSelection> out;
  SelectionEnumerator it(g, tokens);
  while (auto s = it.next())
    out.push_back(std::move(*s));
  return out;
}

} // namespace igdep
