// Acceptance run: one PASS/FAIL line per criterion. Every check is exact;
// the only tolerances are the wall-clock budgets below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "igdep/deps.hpp"
#include "igdep/engine.hpp"
#include "igdep/metrics.hpp"
#include "igdep/oracle.hpp"
#include "igdep/polarity.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace igdep;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kQuickBudget = 1.0;      // seconds
constexpr double kOracleBudget = 60.0;    // seconds
constexpr double kPropertyBudget = 120.0; // seconds

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string note; // printed under the verdict line

  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double budget, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.need(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream budget_note;
  budget_note << "over budget " << budget << " s";
  o.need(secs < budget, budget_note.str());
  failures += !o.ok;
  std::printf("%s  %-52s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  if (!o.note.empty())
    std::printf("      %s\n", o.note.c_str());
  std::fflush(stdout);
}

ParseResult parse_sentence(const std::string& s) { return test::parse(toy_grammar(), s); }

bool has_edge(const DependencyGraph& g, std::size_t gov, std::size_t dep, DepKind k) {
  return std::any_of(g.edges.begin(), g.edges.end(), [&](const Dependency& e) {
    return e.governor == gov && e.dependent == dep && e.kind == k;
  });
}

std::vector<std::vector<Polarity>> multisets_up_to(std::size_t n) {
  std::vector<std::vector<Polarity>> out;
  std::vector<Polarity> cur;
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t size, std::size_t from) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < std::size(kAllPolarities); ++i) {
      cur.push_back(kAllPolarities[i]);
      grow(size, i);
      cur.pop_back();
    }
  };
  for (std::size_t k = 1; k <= n; ++k)
    grow(k, 0);
  return out;
}

std::vector<Composition> all_trees(const std::vector<Polarity>& ps, std::size_t lo,
                                   std::size_t hi) {
  if (hi - lo == 1)
    return {Composition(ps[lo])};
  std::vector<Composition> out;
  for (std::size_t mid = lo + 1; mid < hi; ++mid)
    for (auto l : all_trees(ps, lo, mid))
      for (auto r : all_trees(ps, mid, hi))
        out.push_back(l && r ? compose(*l, *r) : std::nullopt);
  return out;
}

std::vector<cli::CorpusRecord> bundled_corpus() {
  std::ifstream in(test::asset_path("corpus.tsv"));
  return cli::read_corpus(in);
}

bool known(const std::vector<std::string>& tokens) {
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const std::string& t) { return toy_grammar().find(t); });
}

} // namespace

int main() {
  const std::string clitic_en = "jean en connaît la couleur";
  const std::string relative = "la fille que jean aime vient";

  criterion("polarity table: 25 compose cells", kQuickBudget, [](Outcome& o) {
    // Rows and columns: ~ - + =, '.' for a failing cell.
    const char* table[4][4] = {{"~", "-", "+", "="},
                               {"-", ".", "=", "."},
                               {"+", "=", ".", "."},
                               {"=", ".", ".", "."}};
    auto idx = [](Polarity p) {
      return is_virtual(p) ? 0 : p == Polarity::Negative ? 1 : p == Polarity::Positive ? 2 : 3;
    };
    int cells = 0;
    for (auto a : kAllPolarities)
      for (auto b : kAllPolarities) {
        auto c = compose(a, b);
        std::string got = !c ? "." : is_virtual(*c) ? "~" : std::string(to_token(*c));
        o.need(got == table[idx(a)][idx(b)],
               std::string(to_token(a)) + " o " + std::string(to_token(b)) + " = " + got);
        ++cells;
      }
    o.need(cells == 25, "cell count");
  });

  criterion("clitic en: one model, exact dependency graph", kQuickBudget, [&](Outcome& o) {
    auto r = parse_sentence(clitic_en);
    o.need(r.models.size() == 1, std::to_string(r.models.size()) + " models");
    if (r.models.size() != 1)
      return;
    auto words = test::edge_words(extract(r.models[0]));
    o.need(words == test::sorted({"connaît>jean:NP:linear", "connaît>couleur:NP:linear",
                                  "couleur>la:DET:linear", "couleur>en:N:nonlinear"}),
           "edge set differs");
  });

  criterion("clitic en: linear projection isolates en", kQuickBudget, [&](Outcome& o) {
    auto r = parse_sentence(clitic_en);
    if (r.models.size() != 1)
      return o.need(false, "no unique model");
    auto lin = extract(r.models[0]).only(DepKind::Linear);
    auto touches = std::count_if(lin.edges.begin(), lin.edges.end(), [](const Dependency& e) {
      return e.governor == 1 || e.dependent == 1;
    });
    o.need(touches == 0, "en has linear degree " + std::to_string(touches));
    o.need(!is_connected(lin), "linear projection connected");
  });

  criterion("relative clause: two governors, cycle, projective", kQuickBudget, [&](Outcome& o) {
    auto r = parse_sentence(relative);
    o.need(r.models.size() == 1, std::to_string(r.models.size()) + " models");
    if (r.models.empty())
      return;
    auto g = extract(r.models[0]);
    auto govs = std::count_if(g.edges.begin(), g.edges.end(),
                              [](const Dependency& e) { return e.dependent == 2; });
    o.need(govs == 2, "que has " + std::to_string(govs) + " governors");
    auto r_que = reach(g, 2).members, r_aime = reach(g, 4).members;
    o.need(std::count(r_que.begin(), r_que.end(), 4) && std::count(r_aime.begin(), r_aime.end(), 2),
           "que and aime not on a cycle");
    o.need(has_edge(g, 4, 2, DepKind::Linear) && has_edge(g, 2, 4, DepKind::NonLinear),
           "cycle edges");
    o.need(is_projective(g), "not projective");
  });

  criterion("object clitic le: D7/D3 site, no virtual edges", kQuickBudget, [](Outcome& o) {
    auto r = parse_sentence("jean le connaît");
    o.need(r.models.size() == 1, std::to_string(r.models.size()) + " models");
    if (r.models.empty())
      return;
    const auto& m = r.models[0];
    auto g = extract(m);
    bool found = false;
    for (const auto& e : g.edges) {
      if (e.governor != 2 || e.dependent != 1 || e.kind != DepKind::Linear)
        continue;
      std::set<std::string> ids;
      for (const auto& mem : m.find(e.site)->members)
        ids.insert(mem.id);
      found = ids.count("D7") && ids.count("D3");
    }
    o.need(found, "no connaît->le edge at the D7/D3 site");
    o.need(g.only(DepKind::NonLinear).edges.empty(), "non-linear edges present");
  });

  criterion("metrics: block degree, projectivity, nesting", kQuickBudget, [&](Outcome& o) {
    auto a = parse_sentence(clitic_en), b = parse_sentence(relative);
    if (a.models.size() != 1 || b.models.size() != 1)
      return o.need(false, "no unique model");
    auto g4 = extract(a.models[0]), g5 = extract(b.models[0]);
    o.need(block_degree(g4) == 2, "clitic en block degree");
    o.need(!is_projective(g4), "clitic en projective");
    o.need(block_degree(g5) == 1, "relative block degree");
    o.need(is_well_nested(g4) && is_well_nested(g5), "nesting");
  });

  criterion("oracle equivalence on bundled sentences", kOracleBudget, [](Outcome& o) {
    std::set<std::string> sentences;
    for (const auto& rec : bundled_corpus())
      sentences.insert(rec.sentence);
    for (const char* s : {"jean le connaît", "connaît jean le", "jean en connaît"})
      sentences.insert(s);
    std::size_t compared = 0, skipped = 0;
    for (const auto& s : sentences) {
      auto tokens = tokenize(s);
      if (!known(tokens))
        continue;
      std::size_t most = 0;
      for (const auto& sel : lexical_selections(toy_grammar(), tokens)) {
        std::size_t n = 0;
        for (const auto* d : sel.picks)
          n += d->nodes.size();
        most = std::max(most, n);
      }
      if (most > kOracleNodeCap) {
        ++skipped;
        continue;
      }
      auto engine = test::parse(toy_grammar(), s);
      auto oracle = oracle_parse(toy_grammar(), tokens);
      o.need(test::keys(engine.models) == test::keys(oracle), "differs on '" + s + "'");
      ++compared;
    }
    auto frag = load_grammar_file(test::data_path("fragment_grammar.json"));
    for (const char* s : {"la couleur", "couleur la", "la belle couleur grande"}) {
      auto tokens = tokenize(s);
      o.need(test::keys(test::parse(frag, s).models) == test::keys(oracle_parse(frag, tokens)),
             std::string("differs on fragment '") + s + "'");
      ++compared;
    }
    o.need(compared >= 15, "only " + std::to_string(compared) + " sentences compared");
    o.note = "compared " + std::to_string(compared) + " sentences, " + std::to_string(skipped) +
             " above the " + std::to_string(kOracleNodeCap) + "-node cap";
  });

  criterion("properties: polarity order independence", kPropertyBudget, [](Outcome& o) {
    std::size_t folds = 0;
    for (auto ms : multisets_up_to(4)) {
      std::sort(ms.begin(), ms.end());
      const auto expected = compose_multiset(ms);
      do
        for (auto r : all_trees(ms, 0, ms.size())) {
          o.need(r == expected, "order-dependent result");
          ++folds;
        }
      while (std::next_permutation(ms.begin(), ms.end()));
    }
    for (auto a : kAllPolarities)
      for (auto b : kAllPolarities)
        o.need(compose(a, b) == compose(b, a), "not commutative");
    o.note = std::to_string(folds) + " orders and bracketings";
  });

  criterion("properties: projective implies well-nested", kPropertyBudget, [](Outcome& o) {
    std::size_t projective = 0;
    auto n = test::for_each_small_graph(5, 6, [&](const DependencyGraph& g) {
      if (test::oracle_block_degree(g) != 1)
        return;
      ++projective;
      if (!test::oracle_well_nested(g) || !is_well_nested(g) || !is_projective(g))
        o.need(false, "counterexample found");
    });
    o.note = std::to_string(n) + " graphs, " + std::to_string(projective) + " projective";
  });

  criterion("properties: corpus graphs weakly connected", kPropertyBudget, [](Outcome& o) {
    o.need(check_connectivity_condition(toy_grammar()).empty(), "grammar violates the condition");
    std::size_t graphs = 0;
    for (const auto& rec : bundled_corpus()) {
      auto tokens = tokenize(rec.sentence);
      if (!known(tokens))
        continue;
      for (const auto& m : test::parse(toy_grammar(), rec.sentence).models) {
        auto g = extract(m);
        o.need(is_connected(g) && test::oracle_connected(g), "disconnected: " + rec.sentence);
        ++graphs;
      }
    }
    o.need(graphs > 0, "no graphs");
    o.note = std::to_string(graphs) + " graphs";
  });

  criterion("regression corpus: 100% pass", kQuickBudget * 10, [](Outcome& o) {
    cli::RunConfig cfg;
    cfg.corpus_path = test::asset_path("corpus.tsv");
    std::ostringstream out, err;
    int rc = cli::cmd_corpus(cfg, out, err);
    o.need(rc == cli::kExitOk, "exit " + std::to_string(rc));
    auto text = out.str();
    auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
    o.need(text.find("FAIL") == std::string::npos, last);
    o.note = last.substr(0, last.size() - 1);
  });

  std::printf("NOTE  wide-coverage accept/reject rates need a lexicon that is not available;"
              " the regression corpus above stands in for them\n");
  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
