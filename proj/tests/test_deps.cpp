#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "igdep/deps.hpp"
#include "support.hpp"

using namespace igdep;
using test::edge_words;
using test::parse;

namespace {

DependencyGraph graph(const std::string& sentence) {
  auto r = parse(toy_grammar(), sentence);
  REQUIRE(r.models.size() == 1);
  return extract(r.models[0]);
}

std::size_t governors_of(const DependencyGraph& g, std::size_t w) {
  return std::count_if(g.edges.begin(), g.edges.end(),
                       [&](const Dependency& e) { return e.dependent == w; });
}

} // namespace

TEST_CASE("clitic en sentence edges") {
  auto g = graph("jean en connaît la couleur");
  CHECK(edge_words(g) == test::sorted({"connaît>jean:NP:linear", "connaît>couleur:NP:linear",
                                       "couleur>la:DET:linear", "couleur>en:N:nonlinear"}));
  CHECK(edge_words(g.only(DepKind::Linear)).size() == 3);
  CHECK(edge_words(g.only(DepKind::NonLinear)) ==
        std::vector<std::string>{"couleur>en:N:nonlinear"});
}

TEST_CASE("relative clause edges form a cycle through que") {
  auto g = graph("la fille que jean aime vient");
  CHECK(edge_words(g) ==
        test::sorted({"fille>la:DET:linear", "vient>fille:NP:linear", "fille>que:N:nonlinear",
                      "aime>que:NP:linear", "que>aime:S:nonlinear", "aime>jean:NP:linear"}));
  CHECK(governors_of(g, 2) == 2);
}

TEST_CASE("clitic le: one linear object edge, nothing from its virtual nodes") {
  auto g = graph("jean le connaît");
  CHECK(edge_words(g) == test::sorted({"connaît>jean:NP:linear", "connaît>le:NP:linear"}));
  CHECK(g.only(DepKind::NonLinear).edges.empty());
}

TEST_CASE("a saturated node with nothing attached adds no edge") {
  auto frag = load_grammar_file(test::data_path("fragment_grammar.json"));
  auto r = parse(frag, "la couleur");
  REQUIRE(r.models.size() == 1);
  CHECK(edge_words(extract(r.models[0])) == std::vector<std::string>{"couleur>la:DET:linear"});
}

TEST_CASE("edge sites point at the saturating tree node") {
  auto r = parse(toy_grammar(), "jean le connaît");
  auto g = extract(r.models[0]);
  for (const auto& e : g.edges) {
    const auto* site = r.models[0].find(e.site);
    REQUIRE(site);
    CHECK(site->category == e.label);
  }
}

TEST_CASE("relabel with funct features") {
  auto r = parse(toy_grammar(), "jean en connaît la couleur");
  const auto& m = r.models[0];
  auto g = relabel_with_functions(extract(m), m);
  CHECK(edge_words(g) == test::sorted({"connaît>jean:subj:linear", "connaît>couleur:obj:linear",
                                       "couleur>la:det:linear", "couleur>en:N:nonlinear"}));
  CHECK(relabel_with_functions(DependencyGraph{}, m).edges.empty());
}

TEST_CASE("tsv export") {
  auto g = graph("jean en connaît la couleur");
  CHECK(to_tsv(g) == "1\tjean\t3:NP:linear\n"
                     "2\ten\t5:N:nonlinear\n"
                     "3\tconnaît\t0:root\n"
                     "4\tla\t5:DET:linear\n"
                     "5\tcouleur\t3:NP:linear\n");
  auto rel = graph("la fille que jean aime vient");
  CHECK(to_tsv(rel).find("3\tque\t2:N:nonlinear|5:NP:linear\n") != std::string::npos);
}

TEST_CASE("dot export") {
  auto dot = to_dot(graph("jean en connaît la couleur"));
  CHECK(dot.rfind("digraph dependencies {", 0) == 0);
  CHECK(dot.find("w2 -> w0 [label=\"NP\", style=solid") != std::string::npos);
  CHECK(dot.find("w4 -> w1 [label=\"N\", style=dashed") != std::string::npos);
  CHECK(dot.find("{ rank=same; w0; w1; w2; w3; w4; }") != std::string::npos);
}

TEST_CASE("json export") {
  auto j = to_json(graph("jean le connaît"));
  CHECK(j["n_tokens"] == 3);
  CHECK(j["tokens"] == nlohmann::json({"jean", "le", "connaît"}));
  REQUIRE(j["edges"].size() == 2);
  for (const auto& e : j["edges"]) {
    CHECK(e["governor"] == 2);
    CHECK(e["kind"] == "linear");
  }
}

TEST_CASE("dependency kind tokens") {
  CHECK(dep_kind_from_token("linear") == DepKind::Linear);
  CHECK(dep_kind_from_token("nonlinear") == DepKind::NonLinear);
  CHECK_THROWS_AS(dep_kind_from_token("weird"), SyntaxError);
}
