#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include "igdep/deps.hpp"
#include "igdep/grammar.hpp"
#include "igdep/metrics.hpp"

namespace igdep::cli {

using nlohmann::json;

Format format_from_token(const std::string& token) {
  if (token == "tsv")
    return Format::Tsv;
  if (token == "json")
    return Format::Json;
  if (token == "dot")
    return Format::Dot;
  if (token == "bracketed")
    return Format::Bracketed;
  throw SyntaxError("unknown output format '" + token + "'");
}

namespace {

GrammarLexicon load(const RunConfig& cfg) {
  if (cfg.grammar_path)
    return load_grammar_file(*cfg.grammar_path);
  return toy_grammar();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  return out;
}

DependencyGraph graph_of(const ParseModel& m, bool label_funct) {
  auto g = extract(m);
  return label_funct ? relabel_with_functions(g, m) : g;
}

void emit(const RunConfig& cfg, const std::vector<std::string>& tokens, const ParseResult& r,
          std::ostream& out) {
  const auto count = r.models.size();
  if (cfg.format == Format::Json) {
    json models = json::array();
    for (const auto& m : r.models) {
      auto g = graph_of(m, cfg.label_funct);
      models.push_back({{"model", to_json(m)},
                        {"dependencies", to_json(g)},
                        {"metrics", to_json(measure(g))}});
    }
    out << json{{"tokens", tokens}, {"models", std::move(models)}}.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto& m = r.models[i];
    auto g = graph_of(m, cfg.label_funct);
    const auto metrics = to_json(measure(g)).dump();
    const char* comment = cfg.format == Format::Dot ? "//" : "#";
    out << comment << " model " << i + 1 << "/" << count << '\n';
    switch (cfg.format) {
    case Format::Tsv:
      out << "# tree: " << to_bracketed(m) << '\n' << to_tsv(g);
      break;
    case Format::Dot:
      out << "// tree: " << to_bracketed(m) << '\n' << to_dot(g);
      break;
    case Format::Bracketed:
      out << to_bracketed(m) << '\n';
      break;
    case Format::Json:
      break;
    }
    out << comment << " metrics: " << metrics << '\n';
  }
}

} // namespace

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#')
      continue;
    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3)
      throw SyntaxError("corpus line " + std::to_string(no) + ": expected 2 or 3 tab-separated fields");
    CorpusRecord rec;
    rec.line = no;
    if (fields[0] == "ok")
      rec.expect_ok = true;
    else if (fields[0] == "bad")
      rec.expect_ok = false;
    else
      throw SyntaxError("corpus line " + std::to_string(no) + ": unknown verdict '" + fields[0] + "'");
    rec.sentence = fields[1];
    if (fields.size() == 3) {
      std::vector<Dependency> edges;
      for (const auto& item : split(fields[2], ';')) {
        if (item.empty())
          continue;
        auto parts = split(item, ':');
        if (parts.size() != 4)
          throw SyntaxError("corpus line " + std::to_string(no) + ": bad edge '" + item + "'");
        try {
          auto gov = std::stoul(parts[0]), dep = std::stoul(parts[1]);
          if (gov == 0 || dep == 0)
            throw SyntaxError("corpus line " + std::to_string(no) + ": indices are 1-based");
          edges.push_back({gov - 1, dep - 1, parts[2], dep_kind_from_token(parts[3]), {}});
        } catch (const std::logic_error&) {
          throw SyntaxError("corpus line " + std::to_string(no) + ": bad edge '" + item + "'");
        }
      }
      rec.edges = std::move(edges);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

bool same_edges(const std::vector<Dependency>& a, const std::vector<Dependency>& b) {
  auto key = [](const std::vector<Dependency>& v) {
    std::vector<std::tuple<std::size_t, std::size_t, std::string, int>> k;
    for (const auto& e : v)
      k.emplace_back(e.governor, e.dependent, e.label, static_cast<int>(e.kind));
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(a) == key(b);
}

int cmd_parse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!cfg.sentence) {
      err << "error: parse needs a sentence (-s)\n";
      return kExitError;
    }
    auto g = load(cfg);
    auto tokens = tokenize(*cfg.sentence);
    if (tokens.empty()) {
      err << "error: empty sentence\n";
      return kExitError;
    }
    auto limits = cfg.limits;
    if (!cfg.all_models)
      limits.max_models = 1;
    auto r = parse_all(g, tokens, limits);
    if (!r.parsed()) {
      const auto& d = r.diagnostic;
      err << "no parse: best partial saturation " << d.best_saturated << "/" << d.total_nodes
          << " description nodes (selection " << d.best_selection << " of "
          << d.selections_tried << ")";
      if (!d.unsaturated.empty()) {
        err << "; unsaturated:";
        for (const auto& u : d.unsaturated)
          err << ' ' << u;
      }
      err << '\n';
      return kExitNoParse;
    }
    emit(cfg, tokens, r, out);
    return kExitOk;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_check(const std::string& grammar_path, std::ostream& out, std::ostream& err) {
  GrammarLexicon g;
  try {
    g = load_grammar_file(grammar_path, {.validate = false});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  auto violations = validate_grammar(g);
  auto disconnected = check_connectivity_condition(g);
  std::size_t n_entries = 0;
  for (const auto& [_, daps] : g.entries)
    n_entries += daps.size();
  out << "grammar " << (g.name.empty() ? grammar_path : g.name) << ": " << g.entries.size()
      << " words, " << n_entries << " entries\n";
  for (const auto& v : violations)
    out << "invalid " << v.word << "#" << v.entry << ": " << to_name(v.violation.kind) << " "
        << v.violation.detail << '\n';
  for (const auto& e : disconnected)
    out << "connectivity " << e.word << "#" << e.entry
        << ": no positive, negative or dependency-virtual node\n";
  out << violations.size() << " validation violation(s), " << disconnected.size()
      << " connectivity violation(s)\n";
  return violations.empty() && disconnected.empty() ? kExitOk : kExitNoParse;
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CorpusRecord> records;
  GrammarLexicon g;
  try {
    if (!cfg.corpus_path) {
      err << "error: corpus needs a corpus file (-c)\n";
      return kExitError;
    }
    std::ifstream in(*cfg.corpus_path);
    if (!in) {
      err << "error: cannot open corpus " << *cfg.corpus_path << '\n';
      return kExitError;
    }
    records = read_corpus(in);
    g = load(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  std::size_t passed = 0;
  for (const auto& rec : records) {
    std::string note;
    bool pass = false;
    try {
      auto r = parse_all(g, tokenize(rec.sentence), cfg.limits);
      const bool accepted = r.parsed();
      pass = accepted == rec.expect_ok;
      if (!pass)
        note = accepted ? "accepted but expected bad" : "rejected but expected ok";
      if (pass && accepted && rec.edges) {
        pass = std::any_of(r.models.begin(), r.models.end(), [&](const ParseModel& m) {
          return same_edges(graph_of(m, cfg.label_funct).edges, *rec.edges);
        });
        if (!pass)
          note = "no model has the expected edges";
      }
    } catch (const UnknownWord& e) {
      pass = !rec.expect_ok;
      if (!pass)
        note = e.what();
    } catch (const LimitExceeded& e) {
      note = std::string("limit exceeded: ") + e.what();
    }
    passed += pass;
    out << (pass ? "PASS" : "FAIL") << "\tline " << rec.line << '\t'
        << (rec.expect_ok ? "ok" : "bad") << '\t' << rec.sentence;
    if (!note.empty())
      out << "\t(" << note << ")";
    out << '\n';
  }
  out << passed << "/" << records.size() << " passed\n";
  return passed == records.size() ? kExitOk : kExitNoParse;
}

} // namespace igdep::cli
