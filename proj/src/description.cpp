#include "igdep/description.hpp"

#include <algorithm>
#include <set>

#include "igdep/error.hpp"

namespace igdep {

// ---------------------------------------------------------------------------
// Substitution

std::string Substitution::find(const std::string& var) const {
  std::string cur = var;
  for (auto it = parent_.find(cur); it != parent_.end() && it->second != cur;
       it = parent_.find(cur))
    cur = it->second;
  return cur;
}

bool Substitution::unify_values(const std::string& a, const std::string& b) {
  const bool va = is_variable(a), vb = is_variable(b);
  if (!va && !vb)
    return a == b;
  if (va)
    parent_.try_emplace(a, a);
  if (vb)
    parent_.try_emplace(b, b);
  if (va && !vb) {
    auto root = find(a);
    auto [it, inserted] = atom_.try_emplace(root, b);
    return inserted || it->second == b;
  }
  if (!va && vb)
    return unify_values(b, a);

  auto ra = find(a), rb = find(b);
  if (ra == rb)
    return true;
  if (rb < ra)
    std::swap(ra, rb);
  auto ia = atom_.find(ra), ib = atom_.find(rb);
  if (ia != atom_.end() && ib != atom_.end() && ia->second != ib->second)
    return false;
  if (ia == atom_.end() && ib != atom_.end())
    atom_[ra] = ib->second;
  if (ib != atom_.end())
    atom_.erase(rb);
  parent_[rb] = ra;
  return true;
}

std::string Substitution::resolve(const std::string& value) const {
  if (!is_variable(value))
    return value;
  auto root = find(value);
  if (auto it = atom_.find(root); it != atom_.end())
    return it->second;
  return root;
}

FeatureStructure Substitution::apply(const FeatureStructure& fs) const {
  FeatureStructure out;
  for (const auto& [k, v] : fs)
    out.emplace(k, resolve(v));
  return out;
}

std::map<std::string, std::string> Substitution::bindings() const {
  std::map<std::string, std::string> out;
  for (const auto& [var, _] : parent_) {
    auto r = resolve(var);
    if (r != var)
      out.emplace(var, r);
  }
  return out;
}

FeatureStructure scope_variables(const FeatureStructure& fs, std::size_t scope) {
  FeatureStructure out;
  for (const auto& [k, v] : fs)
    out.emplace(k, is_variable(v) ? v + "@" + std::to_string(scope) : v);
  return out;
}

bool unify_into(FeatureStructure& into, const FeatureStructure& fs, Substitution& subst) {
  for (const auto& [k, v] : fs) {
    auto [it, inserted] = into.try_emplace(k, v);
    if (!inserted && !subst.unify_values(it->second, v))
      return false;
  }
  return true;
}

std::optional<Unification> unify(const FeatureStructure& f, const FeatureStructure& g) {
  Substitution s;
  FeatureStructure acc = f;
  if (!unify_into(acc, g, s))
    return std::nullopt;
  return Unification{s.apply(acc), s.bindings()};
}

// ---------------------------------------------------------------------------
// Dap

std::string_view to_token(Phon p) noexcept {
  switch (p) {
  case Phon::Anchor: return "anchor";
  case Phon::Empty: return "empty";
  case Phon::Internal: return "internal";
  }
  return "?";
}

Phon phon_from_token(std::string_view token) {
  for (auto p : {Phon::Anchor, Phon::Empty, Phon::Internal})
    if (to_token(p) == token)
      return p;
  throw SyntaxError("unknown phon token '" + std::string(token) + "'");
}

std::optional<std::size_t> Dap::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id)
      return i;
  return std::nullopt;
}

std::optional<std::size_t> Dap::anchor_index() const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].phon == Phon::Anchor)
      return i;
  return std::nullopt;
}

std::string Dap::qualified_id(const std::string& id) const {
  return word + "#" + std::to_string(entry) + "." + id;
}

std::string_view to_name(ViolationKind k) noexcept {
  switch (k) {
  case ViolationKind::MissingAnchor: return "MissingAnchor";
  case ViolationKind::DuplicateAnchor: return "DuplicateAnchor";
  case ViolationKind::DuplicateNodeId: return "DuplicateNodeId";
  case ViolationKind::DanglingId: return "DanglingId";
  case ViolationKind::MultipleParents: return "MultipleParents";
  case ViolationKind::ParentCycle: return "ParentCycle";
  case ViolationKind::DominanceCycle: return "DominanceCycle";
  case ViolationKind::PrecedenceCycle: return "PrecedenceCycle";
  case ViolationKind::EmptyNotLeaf: return "EmptyNotLeaf";
  case ViolationKind::EmptyCategory: return "EmptyCategory";
  case ViolationKind::NoEntries: return "NoEntries";
  }
  return "?";
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

void transitive_closure(Matrix& m) {
  const auto n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j])
            m[i][j] = true;
}

} // namespace

std::vector<Violation> validate_dap(const Dap& d) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind k, std::string detail) {
    out.push_back({k, std::move(detail)});
  };

  const auto n = d.nodes.size();
  std::map<std::string, std::size_t> index;
  std::size_t anchors = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = d.nodes[i];
    if (!index.emplace(node.id, i).second)
      report(ViolationKind::DuplicateNodeId, node.id);
    if (node.category.empty())
      report(ViolationKind::EmptyCategory, node.id);
    if (node.phon == Phon::Anchor)
      ++anchors;
  }
  if (anchors == 0)
    report(ViolationKind::MissingAnchor, d.word);
  else if (anchors > 1)
    report(ViolationKind::DuplicateAnchor, d.word);

  auto lookup = [&](const std::string& id) -> std::optional<std::size_t> {
    auto it = index.find(id);
    if (it == index.end()) {
      report(ViolationKind::DanglingId, id);
      return std::nullopt;
    }
    return it->second;
  };

  std::vector<std::optional<std::size_t>> parent(n);
  Matrix before(n, std::vector<bool>(n, false));
  for (const auto& [p, kids] : d.children) {
    auto pi = lookup(p);
    if (pi && d.nodes[*pi].phon == Phon::Empty && !kids.empty())
      report(ViolationKind::EmptyNotLeaf, p);
    std::optional<std::size_t> prev;
    for (const auto& c : kids) {
      auto ci = lookup(c);
      if (!ci)
        continue;
      if (parent[*ci])
        report(ViolationKind::MultipleParents, c);
      else if (pi)
        parent[*ci] = *pi;
      if (prev)
        before[*prev][*ci] = true;
      prev = ci;
    }
  }

  bool parent_cycle = false;
  for (std::size_t i = 0; i < n && !parent_cycle; ++i) {
    auto cur = parent[i];
    for (std::size_t steps = 0; cur && steps <= n; ++steps) {
      if (*cur == i) {
        report(ViolationKind::ParentCycle, d.nodes[i].id);
        parent_cycle = true;
        break;
      }
      cur = parent[*cur];
    }
  }

  // Proper ancestry from parenthood, then parenthood + dominance for cycles.
  Matrix anc(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    if (parent[i])
      anc[*parent[i]][i] = true;
  Matrix dom = anc;
  bool bad_dominance_ends = false;
  for (const auto& [a, b] : d.dominance) {
    auto ai = lookup(a), bi = lookup(b);
    if (ai && bi)
      dom[*ai][*bi] = true;
    else
      bad_dominance_ends = true;
  }
  transitive_closure(anc);
  transitive_closure(dom);
  if (!parent_cycle && !bad_dominance_ends) {
    for (std::size_t i = 0; i < n; ++i)
      if (dom[i][i]) {
        report(ViolationKind::DominanceCycle, d.nodes[i].id);
        break;
      }
  }

  for (const auto& [l, r] : d.precedence) {
    auto li = lookup(l), ri = lookup(r);
    if (li && ri)
      before[*li][*ri] = true;
  }
  if (!parent_cycle) {
    // Yield precedence is inherited by descendants on both sides.
    Matrix lifted(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!before[x][y])
          continue;
        for (std::size_t a = 0; a < n; ++a) {
          if (a != x && !anc[x][a])
            continue;
          for (std::size_t b = 0; b < n; ++b)
            if (b == y || anc[y][b])
              lifted[a][b] = true;
        }
      }
    transitive_closure(lifted);
    for (std::size_t x = 0; x < n; ++x) {
      bool bad = lifted[x][x];
      for (std::size_t y = 0; y < n && !bad; ++y)
        bad = lifted[x][y] && (anc[x][y] || anc[y][x]);
      if (bad) {
        report(ViolationKind::PrecedenceCycle, d.nodes[x].id);
        break;
      }
    }
  }
  return out;
}

} // namespace igdep
