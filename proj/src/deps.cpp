#include "igdep/deps.hpp"

#include <optional>
#include <sstream>

#include "igdep/error.hpp"

namespace igdep {

using nlohmann::json;

std::string_view to_token(DepKind k) noexcept {
  return k == DepKind::Linear ? "linear" : "nonlinear";
}

DepKind dep_kind_from_token(std::string_view token) {
  if (token == "linear")
    return DepKind::Linear;
  if (token == "nonlinear")
    return DepKind::NonLinear;
  throw SyntaxError("unknown dependency kind '" + std::string(token) + "'");
}

DependencyGraph DependencyGraph::only(DepKind kind) const {
  DependencyGraph out{n_tokens, tokens, {}};
  for (const auto& e : edges)
    if (e.kind == kind)
      out.edges.push_back(e);
  return out;
}

DependencyGraph extract(const ParseModel& model) {
  DependencyGraph g{model.tokens.size(), model.tokens, {}};
  for (const auto& tn : model.nodes) {
    std::optional<std::size_t> pos, neg, sat;
    for (const auto& m : tn.members) {
      if (m.polarity == Polarity::Positive)
        pos = m.ref.token;
      else if (m.polarity == Polarity::Negative)
        neg = m.ref.token;
      else if (m.polarity == Polarity::Saturated)
        sat = m.ref.token;
    }
    if (pos && neg && *pos != *neg)
      g.edges.push_back({*neg, *pos, tn.category, DepKind::Linear, tn.id});

    const auto governor = pos && neg ? pos : sat;
    if (!governor)
      continue;
    for (const auto& m : tn.members)
      if (m.polarity == Polarity::VirtualDep && m.ref.token != *governor)
        g.edges.push_back({*governor, m.ref.token, tn.category, DepKind::NonLinear, tn.id});
  }
  return g;
}

DependencyGraph relabel_with_functions(const DependencyGraph& g, const ParseModel& model) {
  DependencyGraph out = g;
  for (auto& e : out.edges) {
    const auto* site = model.find(e.site);
    if (!site)
      continue;
    if (auto it = site->features.find("funct"); it != site->features.end() &&
                                                !is_variable(it->second))
      e.label = it->second;
  }
  return out;
}

std::string to_tsv(const DependencyGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.n_tokens; ++i) {
    os << i + 1 << '\t' << (i < g.tokens.size() ? g.tokens[i] : "_") << '\t';
    bool any = false;
    for (const auto& e : g.edges)
      if (e.dependent == i) {
        os << (any ? "|" : "") << e.governor + 1 << ':' << e.label << ':' << to_token(e.kind);
        any = true;
      }
    if (!any)
      os << "0:root";
    os << '\n';
  }
  return os.str();
}

json to_json(const DependencyGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"governor", e.governor},
                     {"dependent", e.dependent},
                     {"label", e.label},
                     {"kind", std::string(to_token(e.kind))},
                     {"site", e.site}});
  return {{"n_tokens", g.n_tokens}, {"tokens", g.tokens}, {"edges", std::move(edges)}};
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string to_dot(const DependencyGraph& g) {
  std::ostringstream os;
  os << "digraph dependencies {\n"
     << "  rankdir=LR;\n"
     << "  node [shape=plaintext];\n"
     << "  { rank=same;";
  for (std::size_t i = 0; i < g.n_tokens; ++i)
    os << " w" << i << ';';
  os << " }\n";
  for (std::size_t i = 0; i < g.n_tokens; ++i)
    os << "  w" << i << " [label=\"" << dot_escape(i < g.tokens.size() ? g.tokens[i] : "_")
       << "\"];\n";
  for (std::size_t i = 1; i < g.n_tokens; ++i)
    os << "  w" << i - 1 << " -> w" << i << " [style=invis];\n";
  for (const auto& e : g.edges) {
    os << "  w" << e.governor << " -> w" << e.dependent << " [label=\"" << dot_escape(e.label)
       << "\"";
    if (e.kind == DepKind::Linear)
      os << ", style=solid, tailport=n, headport=n";
    else
      os << ", style=dashed, tailport=s, headport=s";
    os << ", constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace igdep
