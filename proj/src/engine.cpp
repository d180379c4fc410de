#include "igdep/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace igdep {

namespace {

using Clock = std::chrono::steady_clock;
using Grid = std::vector<std::vector<char>>;

/// Description nodes of a selection flattened to global indices, with every
/// structural constraint expressed on those indices.
struct Flat {
  std::vector<DescRef> refs;
  std::vector<const DapNode*> nodes;
  std::vector<FeatureStructure> feats; // variables scoped by token
  std::vector<std::size_t> rank;       // position in (token, id) order
  std::vector<std::pair<std::size_t, std::size_t>> parent_edges;
  std::vector<std::pair<std::size_t, std::size_t>> dominance;
  std::vector<std::pair<std::size_t, std::size_t>> precedence;
};

Flat flatten(const LexicalSelection& sel) {
  Flat f;
  std::vector<std::size_t> offset;
  std::vector<std::size_t> anchors;
  for (std::size_t t = 0; t < sel.picks.size(); ++t) {
    const Dap& d = *sel.picks[t];
    offset.push_back(f.refs.size());
    for (std::size_t k = 0; k < d.nodes.size(); ++k) {
      if (d.nodes[k].phon == Phon::Anchor)
        anchors.push_back(f.refs.size());
      f.refs.push_back({t, k});
      f.nodes.push_back(&d.nodes[k]);
      f.feats.push_back(scope_variables(d.nodes[k].features, t));
    }
    auto g = [&](const std::string& id) { return offset[t] + d.index_of(id).value(); };
    for (const auto& [p, kids] : d.children) {
      for (std::size_t i = 0; i < kids.size(); ++i) {
        f.parent_edges.emplace_back(g(p), g(kids[i]));
        if (i > 0)
          f.precedence.emplace_back(g(kids[i - 1]), g(kids[i]));
      }
    }
    for (const auto& [a, b] : d.dominance)
      f.dominance.emplace_back(g(a), g(b));
    for (const auto& [l, r] : d.precedence)
      f.precedence.emplace_back(g(l), g(r));
  }
  for (std::size_t i = 1; i < anchors.size(); ++i)
    f.precedence.emplace_back(anchors[i - 1], anchors[i]);

  std::vector<std::size_t> order(f.refs.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(f.refs[a].token, f.nodes[a]->id) < std::tie(f.refs[b].token, f.nodes[b]->id);
  });
  f.rank.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    f.rank[order[i]] = i;
  return f;
}

struct Class {
  std::vector<std::size_t> members;
  Composition polarity;
  std::string category;
  FeatureStructure feats;
  std::size_t key = 0; // smallest member rank
  bool alive = true;
};

struct State {
  std::vector<std::size_t> owner; // global node -> class index
  std::vector<Class> classes;
  Substitution subst;
};

void closure(Grid& m) {
  const auto n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j])
            m[i][j] = 1;
}

/// Enumerates every linear order of `items` compatible with `before`.
void linear_extensions(const std::vector<std::size_t>& items,
                       const std::set<std::pair<std::size_t, std::size_t>>& before,
                       std::vector<std::size_t>& prefix, std::vector<char>& used,
                       std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() == items.size()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (used[i])
      continue;
    bool ready = true;
    for (std::size_t j = 0; j < items.size() && ready; ++j)
      ready = used[j] || j == i || !before.count({items[j], items[i]});
    if (!ready)
      continue;
    used[i] = 1;
    prefix.push_back(items[i]);
    linear_extensions(items, before, prefix, used, out);
    prefix.pop_back();
    used[i] = 0;
  }
}

struct Budget {
  SearchLimits limits;
  Clock::time_point start = Clock::now();
  std::size_t merges = 0;
};

class Search {
public:
  Search(std::span<const std::string> tokens, const LexicalSelection& sel, std::size_t sel_index,
         const SearchOptions& opts, Budget& budget, std::vector<ParseModel>& models,
         std::set<std::string>& seen, NoParseDiagnostic& diag)
      : tokens_(tokens), sel_(sel), sel_index_(sel_index), opts_(opts), budget_(budget),
        models_(models), seen_(seen), diag_(diag), flat_(flatten(sel)) {}

  void run() {
    State s;
    s.owner.resize(flat_.refs.size());
    for (std::size_t g = 0; g < flat_.refs.size(); ++g) {
      s.owner[g] = g;
      Class c;
      c.members = {g};
      c.polarity = flat_.nodes[g]->polarity;
      c.category = flat_.nodes[g]->category;
      c.key = flat_.rank[g];
      if (!unify_into(c.feats, flat_.feats[g], s.subst))
        return;
      s.classes.push_back(std::move(c));
    }
    if (!consistent(s))
      return;
    search(s);
  }

private:
  bool full() const { return models_.size() >= budget_.limits.max_models; }

  void tick() {
    if (++budget_.merges > budget_.limits.max_merges)
      throw LimitExceeded("merge budget of " + std::to_string(budget_.limits.max_merges) +
                              " exhausted",
                          budget_.limits);
    if (Clock::now() - budget_.start > budget_.limits.timeout)
      throw LimitExceeded("timeout of " + std::to_string(budget_.limits.timeout.count()) +
                              " ms exceeded",
                          budget_.limits);
  }

  void note_progress(const State& s) {
    std::size_t saturated = 0;
    for (const auto& c : s.classes)
      if (c.alive && c.polarity == Polarity::Saturated)
        saturated += c.members.size();
    if (diag_.total_nodes == 0 || saturated > diag_.best_saturated) {
      diag_.best_saturated = saturated;
      diag_.total_nodes = flat_.refs.size();
      diag_.best_selection = sel_index_;
      diag_.unsaturated.clear();
      for (std::size_t g = 0; g < flat_.refs.size(); ++g)
        if (s.classes[s.owner[g]].polarity != Polarity::Saturated)
          diag_.unsaturated.push_back(flat_.nodes[g]->id + "@" +
                                      std::to_string(flat_.refs[g].token));
    }
  }

  /// Picks the agenda class satisfying `pred`: leftmost by (token, id), or
  /// rightmost when exploring in reverse.
  template <class Pred> std::optional<std::size_t> pick(const State& s, Pred pred) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      const auto& c = s.classes[i];
      if (!c.alive || !pred(c))
        continue;
      bool better = !best || (opts_.exploration == Exploration::Canonical
                                  ? c.key < s.classes[*best].key
                                  : c.key > s.classes[*best].key);
      if (better)
        best = i;
    }
    return best;
  }

  template <class Pred> std::vector<std::size_t> candidates(const State& s, Pred pred) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.classes.size(); ++i)
      if (s.classes[i].alive && pred(s.classes[i]))
        out.push_back(i);
    std::sort(out.begin(), out.end(),
              [&](auto a, auto b) { return s.classes[a].key < s.classes[b].key; });
    if (opts_.exploration == Exploration::Reversed)
      std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<State> merge(const State& s, std::size_t a, std::size_t b) {
    const auto& ca = s.classes[a];
    const auto& cb = s.classes[b];
    if (ca.category != cb.category)
      return std::nullopt;
    auto pol = ca.polarity;
    for (auto g : cb.members)
      pol = compose(pol, flat_.nodes[g]->polarity);
    if (!pol)
      return std::nullopt;
    if (!opts_.allow_intra_dap)
      for (auto x : ca.members)
        for (auto y : cb.members)
          if (flat_.refs[x].token == flat_.refs[y].token)
            return std::nullopt;
    tick();

    State next = s;
    auto& into = next.classes[a];
    auto& from = next.classes[b];
    if (!unify_into(into.feats, from.feats, next.subst))
      return std::nullopt;
    into.polarity = pol;
    into.key = std::min(into.key, from.key);
    for (auto g : from.members) {
      into.members.push_back(g);
      next.owner[g] = a;
    }
    from.members.clear();
    from.alive = false;
    if (!consistent(next))
      return std::nullopt;
    return next;
  }

  /// Monotone structural test: parenthood must stay acyclic and the yield
  /// precedence implied so far must not relate a class to itself or to one
  /// of its ancestors. Further merges can only add constraints.
  bool consistent(const State& s) const {
    std::vector<std::size_t> idx(s.classes.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.classes.size(); ++i)
      if (s.classes[i].alive)
        idx[i] = k++;
    auto at = [&](std::size_t g) { return idx[s.owner[g]]; };

    Grid anc(k, std::vector<char>(k, 0)); // ancestor-or-self
    for (std::size_t i = 0; i < k; ++i)
      anc[i][i] = 1;
    std::vector<std::pair<std::size_t, std::size_t>> strict;
    for (auto [p, c] : flat_.parent_edges) {
      auto a = at(p), b = at(c);
      if (a == b)
        return false;
      anc[a][b] = 1;
      strict.emplace_back(a, b);
    }
    for (auto [p, c] : flat_.dominance)
      anc[at(p)][at(c)] = 1;
    closure(anc);
    for (auto [a, b] : strict)
      if (anc[b][a])
        return false;

    Grid before(k, std::vector<char>(k, 0));
    for (auto [x, y] : flat_.precedence) {
      auto a = at(x), b = at(y);
      for (std::size_t u = 0; u < k; ++u) {
        if (!anc[a][u])
          continue;
        for (std::size_t v = 0; v < k; ++v)
          if (anc[b][v])
            before[u][v] = 1;
      }
    }
    closure(before);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        if (before[x][y] && (anc[x][y] || anc[y][x]))
          return false;
    return true;
  }

  void search(const State& s) {
    if (full())
      return;
    note_progress(s);

    auto charged = pick(s, [](const Class& c) {
      return c.polarity == Polarity::Positive || c.polarity == Polarity::Negative;
    });
    if (charged) {
      const auto want = s.classes[*charged].polarity == Polarity::Positive ? Polarity::Negative
                                                                             : Polarity::Positive;
      for (auto other : candidates(s, [&](const Class& c) { return c.polarity == want; })) {
        if (auto next = merge(s, *charged, other))
          search(*next);
        if (full())
          return;
      }
      return;
    }

    auto floating = pick(s, [](const Class& c) { return c.polarity && is_virtual(*c.polarity); });
    if (floating) {
      for (auto target : candidates(
               s, [](const Class& c) { return c.polarity == Polarity::Saturated; })) {
        if (auto next = merge(s, target, *floating))
          search(*next);
        if (full())
          return;
      }
      return;
    }

    emit(s);
  }

  /// Turns a fully saturated partition into ordered trees.
  void emit(const State& s) {
    std::vector<std::size_t> block(s.classes.size(), 0);
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < s.classes.size(); ++i)
      if (s.classes[i].alive) {
        block[i] = alive.size();
        alive.push_back(i);
      }
    const auto k = alive.size();
    auto at = [&](std::size_t g) { return block[s.owner[g]]; };

    std::vector<std::optional<std::size_t>> parent(k);
    std::vector<std::vector<std::size_t>> kids(k);
    for (auto [p, c] : flat_.parent_edges) {
      auto a = at(p), b = at(c);
      if (parent[b] && *parent[b] != a)
        return;
      if (!parent[b]) {
        parent[b] = a;
        kids[a].push_back(b);
      }
    }
    std::optional<std::size_t> root;
    for (std::size_t b = 0; b < k; ++b)
      if (!parent[b]) {
        if (root)
          return;
        root = b;
      }
    if (!root)
      return;

    for (std::size_t b = 0; b < k; ++b) {
      std::size_t anchors = 0, empties = 0;
      for (auto g : s.classes[alive[b]].members) {
        anchors += flat_.nodes[g]->phon == Phon::Anchor;
        empties += flat_.nodes[g]->phon == Phon::Empty;
      }
      const bool phonological = anchors + empties > 0;
      if (anchors > 1 || (anchors && empties) || phonological != kids[b].empty())
        return;
    }

    auto path_to_root = [&](std::size_t b) {
      std::vector<std::size_t> path{b};
      while (parent[path.back()])
        path.push_back(*parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    };
    for (auto [x, y] : flat_.dominance) {
      auto p = path_to_root(at(y));
      if (std::find(p.begin(), p.end(), at(x)) == p.end())
        return;
    }

    // Lift every precedence pair to the two children of its lowest common ancestor.
    std::vector<std::set<std::pair<std::size_t, std::size_t>>> before(k);
    for (auto [x, y] : flat_.precedence) {
      auto px = path_to_root(at(x)), py = path_to_root(at(y));
      std::size_t i = 0;
      while (i < px.size() && i < py.size() && px[i] == py[i])
        ++i;
      if (i == px.size() || i == py.size())
        return; // same node, or one dominates the other
      before[px[i - 1]].emplace(px[i], py[i]);
    }

    std::vector<std::vector<std::vector<std::size_t>>> orders(k);
    for (std::size_t b = 0; b < k; ++b) {
      std::sort(kids[b].begin(), kids[b].end(),
                [&](auto u, auto v) { return s.classes[alive[u]].key < s.classes[alive[v]].key; });
      std::vector<std::size_t> prefix;
      std::vector<char> used(kids[b].size(), 0);
      linear_extensions(kids[b], before[b], prefix, used, orders[b]);
      if (orders[b].empty())
        return;
    }

    ModelSkeleton sk;
    sk.root = *root;
    sk.children.resize(k);
    for (auto b : alive) {
      std::vector<DescRef> refs;
      for (auto g : s.classes[b].members)
        refs.push_back(flat_.refs[g]);
      sk.blocks.push_back(std::move(refs));
    }
    std::function<void(std::size_t)> choose = [&](std::size_t b) {
      if (full())
        return;
      if (b == k) {
        if (auto m = materialize(tokens_, sel_, sel_index_, sk)) {
          if (seen_.insert(m->canonical_key()).second)
            models_.push_back(std::move(*m));
        }
        return;
      }
      for (const auto& o : orders[b]) {
        sk.children[b] = o;
        choose(b + 1);
      }
    };
    choose(0);
  }

  std::span<const std::string> tokens_;
  const LexicalSelection& sel_;
  std::size_t sel_index_;
  const SearchOptions& opts_;
  Budget& budget_;
  std::vector<ParseModel>& models_;
  std::set<std::string>& seen_;
  NoParseDiagnostic& diag_;
  Flat flat_;
};

} // namespace

ParseResult parse_selection(std::span<const std::string> tokens, const LexicalSelection& selection,
                            std::size_t selection_index, const SearchLimits& limits,
                            const SearchOptions& options) {
  ParseResult r;
  Budget budget{limits};
  std::set<std::string> seen;
  Search(tokens, selection, selection_index, options, budget, r.models, seen, r.diagnostic).run();
  r.merges = budget.merges;
  r.diagnostic.selections_tried = 1;
  return r;
}

ParseResult parse_all(const GrammarLexicon& g, std::span<const std::string> tokens,
                      const SearchLimits& limits, const SearchOptions& options) {
  ParseResult r;
  Budget budget{limits};
  std::set<std::string> seen;
  SelectionEnumerator selections(g, tokens);
  std::size_t index = 0;
  while (auto sel = selections.next()) {
    if (r.models.size() >= limits.max_models)
      break;
    Search(tokens, *sel, index, options, budget, r.models, seen, r.diagnostic).run();
    ++index;
  }
  r.merges = budget.merges;
  r.diagnostic.selections_tried = index;
  return r;
}

} // namespace igdep
