#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igdep/deps.hpp"
#include "igdep/engine.hpp"
#include "igdep/grammar.hpp"
#include "igdep/metrics.hpp"
#include "igdep/model.hpp"
#include "igdep/oracle.hpp"
#include "igdep/polarity.hpp"

namespace py = pybind11;
using namespace igdep;

namespace {

std::vector<std::string> split(const std::string& sentence) { return tokenize(sentence); }

std::vector<ParseModel> run_parse(const GrammarLexicon& g, const std::string& sentence,
                                  bool all_models, std::size_t max_merges, long long timeout_ms,
                                  bool reversed) {
  SearchLimits limits;
  limits.max_merges = max_merges;
  limits.timeout = std::chrono::milliseconds(timeout_ms);
  if (!all_models)
    limits.max_models = 1;
  SearchOptions opts;
  if (reversed)
    opts.exploration = Exploration::Reversed;
  auto tokens = split(sentence);
  py::gil_scoped_release unlocked;
  return parse_all(g, tokens, limits, opts).models;
}

py::tuple edge_tuple(const Dependency& e) {
  return py::make_tuple(e.governor, e.dependent, e.label, std::string(to_token(e.kind)));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interaction grammar parsing with dependency extraction";

  auto base = py::register_exception<Error>(m, "IgdepError");
  py::register_exception<SyntaxError>(m, "GrammarSyntaxError", base.ptr());
  py::register_exception<UnknownPolarityToken>(m, "UnknownPolarityToken", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UnknownWord>(m, "UnknownWord", base.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
  py::register_exception<OracleCapExceeded>(m, "OracleCapExceeded", base.ptr());
  py::register_exception<LimitExceeded>(m, "LimitExceeded", base.ptr());

  py::enum_<Polarity>(m, "Polarity")
      .value("Positive", Polarity::Positive)
      .value("Negative", Polarity::Negative)
      .value("VirtualDep", Polarity::VirtualDep)
      .value("VirtualCtx", Polarity::VirtualCtx)
      .value("Saturated", Polarity::Saturated)
      .def_property_readonly("token", [](Polarity p) { return std::string(to_token(p)); })
      .def_static("from_token", [](const std::string& t) { return polarity_from_token(t); });

  m.def("compose", [](Polarity a, Polarity b) { return compose(a, b); },
        "Composition of two polarities, None on failure.");
  m.def("compose_multiset",
        [](const std::vector<Polarity>& ps) { return compose_multiset(ps); });
  m.def("is_saturation_valid",
        [](const std::vector<Polarity>& ps) { return is_saturation_valid(ps); });

  py::class_<GrammarLexicon>(m, "Grammar")
      .def_readonly("name", &GrammarLexicon::name)
      .def_readonly("metadata", &GrammarLexicon::metadata)
      .def_property_readonly("words",
                             [](const GrammarLexicon& g) {
                               std::vector<std::string> out;
                               for (const auto& [w, _] : g.entries)
                                 out.push_back(w);
                               return out;
                             })
      .def("entry_count",
           [](const GrammarLexicon& g, const std::string& w) {
             const auto* e = g.find(w);
             return e ? e->size() : 0;
           })
      .def("validate",
           [](const GrammarLexicon& g) {
             std::vector<std::tuple<std::string, std::size_t, std::string, std::string>> out;
             for (const auto& v : validate_grammar(g))
               out.emplace_back(v.word, v.entry, std::string(to_name(v.violation.kind)),
                                v.violation.detail);
             return out;
           })
      .def("connectivity_violations",
           [](const GrammarLexicon& g) {
             std::vector<std::pair<std::string, std::size_t>> out;
             for (const auto& e : check_connectivity_condition(g))
               out.emplace_back(e.word, e.entry);
             return out;
           })
      .def("to_json", &save_grammar);

  m.def("load_grammar", [](const std::string& path, bool validate) {
    return load_grammar_file(path, {.validate = validate});
  }, py::arg("path"), py::arg("validate") = true);
  m.def("load_grammar_string", [](const std::string& text, bool validate) {
    return load_grammar_string(text, {.validate = validate});
  }, py::arg("text"), py::arg("validate") = true);
  m.def("toy_grammar", []() { return toy_grammar(); });
  m.def("tokenize", &split);

  py::class_<DependencyGraph>(m, "DependencyGraph")
      .def_readonly("tokens", &DependencyGraph::tokens)
      .def_property_readonly("edges",
                             [](const DependencyGraph& g) {
                               py::list out;
                               for (const auto& e : g.edges)
                                 out.append(edge_tuple(e));
                               return out;
                             })
      .def("only",
           [](const DependencyGraph& g, const std::string& kind) {
             return g.only(dep_kind_from_token(kind));
           })
      .def("to_tsv", &to_tsv)
      .def("to_dot", &to_dot)
      .def("to_json", [](const DependencyGraph& g) { return to_json(g).dump(); })
      .def("reach", [](const DependencyGraph& g, std::size_t w) { return reach(g, w).members; })
      .def("metrics", [](const DependencyGraph& g) { return to_json(measure(g)).dump(); });

  py::class_<ParseModel>(m, "Model")
      .def_readonly("tokens", &ParseModel::tokens)
      .def_readonly("yield_order", &ParseModel::yield_order)
      .def("bracketed", &to_bracketed)
      .def("to_json", [](const ParseModel& pm) { return to_json(pm).dump(); })
      .def("canonical_key", &ParseModel::canonical_key)
      .def("verify", &verify_model)
      .def("dependencies",
           [](const ParseModel& pm, bool label_funct) {
             auto g = extract(pm);
             return label_funct ? relabel_with_functions(g, pm) : g;
           },
           py::arg("label_funct") = false);

  m.def("parse", &run_parse, py::arg("grammar"), py::arg("sentence"),
        py::arg("all_models") = true, py::arg("max_merges") = SearchLimits{}.max_merges,
        py::arg("timeout_ms") = SearchLimits{}.timeout.count(), py::arg("reversed") = false);
  m.def("oracle_parse", [](const GrammarLexicon& g, const std::string& sentence) {
    auto tokens = split(sentence);
    return oracle_parse(g, tokens);
  });
  m.attr("ORACLE_NODE_CAP") = kOracleNodeCap;
}
