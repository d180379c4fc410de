#include "igdep/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace igdep {

using nlohmann::json;

bool is_saturation_valid(const MergeSet& s) {
  std::vector<Polarity> ps;
  ps.reserve(s.size());
  for (const auto& m : s)
    ps.push_back(m.polarity);
  return is_saturation_valid(ps);
}

std::string display_name(const Member& m) {
  return m.id + "@" + std::to_string(m.ref.token);
}

const TreeNode* ParseModel::find(const std::string& tree_id) const {
  for (const auto& n : nodes)
    if (n.id == tree_id)
      return &n;
  return nullptr;
}

namespace {

void canonical(const ParseModel& m, std::size_t i, std::string& out) {
  const auto& n = m.nodes[i];
  out += '(';
  out += n.category;
  out += '[';
  for (const auto& mem : n.members) {
    out += mem.qualified;
    out += '@';
    out += std::to_string(mem.ref.token);
    out += ',';
  }
  out += ']';
  for (auto c : n.children)
    canonical(m, c, out);
  out += ')';
}

Member make_member(const LexicalSelection& sel, DescRef r) {
  const Dap& d = *sel.picks.at(r.token);
  const DapNode& n = d.nodes.at(r.node);
  return Member{r, n.id, d.qualified_id(n.id), n.polarity, n.phon};
}

} // namespace

std::string ParseModel::canonical_key() const {
  std::string out;
  if (!nodes.empty())
    canonical(*this, 0, out);
  return out;
}

std::optional<ParseModel> materialize(std::span<const std::string> tokens,
                                      const LexicalSelection& selection,
                                      std::size_t selection_index,
                                      const ModelSkeleton& sk) {
  ParseModel m;
  m.tokens.assign(tokens.begin(), tokens.end());
  m.selection_index = selection_index;
  for (const auto* d : selection.picks)
    m.selection.push_back(*d);

  Substitution subst;
  std::vector<FeatureStructure> feats(sk.blocks.size());
  for (std::size_t b = 0; b < sk.blocks.size(); ++b)
    for (const auto& r : sk.blocks[b]) {
      const auto& node = selection.picks.at(r.token)->nodes.at(r.node);
      if (!unify_into(feats[b], scope_variables(node.features, r.token), subst))
        return std::nullopt;
    }

  // Preorder walk from the root assigns tree indices.
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{sk.root};
  while (!stack.empty()) {
    auto b = stack.back();
    stack.pop_back();
    order.push_back(b);
    const auto& kids = sk.children.at(b);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.push_back(*it);
  }
  std::vector<std::size_t> tree_index(sk.blocks.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    tree_index[order[i]] = i;

  m.nodes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto b = order[i];
    auto& tn = m.nodes[i];
    tn.id = "n" + std::to_string(i);
    auto refs = sk.blocks[b];
    std::sort(refs.begin(), refs.end());
    for (const auto& r : refs)
      tn.members.push_back(make_member(selection, r));
    if (!tn.members.empty())
      tn.category = selection.picks[refs.front().token]->nodes[refs.front().node].category;
    tn.features = subst.apply(feats[b]);
    for (auto c : sk.children[b]) {
      tn.children.push_back(tree_index[c]);
      m.nodes[tree_index[c]].parent = i;
    }
    for (const auto& mem : tn.members) {
      if (mem.phon == Phon::Anchor)
        tn.token = mem.ref.token;
      if (mem.phon == Phon::Empty)
        tn.empty = true;
    }
    if (tn.token)
      m.yield_order.push_back(*tn.token);
  }
  return m;
}

std::vector<std::string> verify_model(const ParseModel& m) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };
  const auto n = m.nodes.size();
  if (n == 0) {
    fail("empty tree");
    return problems;
  }
  if (m.selection.size() != m.tokens.size())
    fail("selection/tokens size mismatch");

  // Tree shape: parent/children agree, every node reached exactly once from root.
  if (m.nodes[0].parent)
    fail("root has a parent");
  std::vector<int> seen(n, 0);
  std::vector<std::size_t> preorder;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    if (i >= n || seen[i]++) {
      fail("tree is not a tree at node index " + std::to_string(i));
      return problems;
    }
    preorder.push_back(i);
    for (auto it = m.nodes[i].children.rbegin(); it != m.nodes[i].children.rend(); ++it) {
      if (*it >= n || m.nodes[*it].parent != i) {
        fail("parent pointer mismatch under " + m.nodes[i].id);
        return problems;
      }
      stack.push_back(*it);
    }
  }
  if (preorder.size() != n)
    fail("unreachable tree nodes");

  // Image of every description node; each appears exactly once.
  std::map<DescRef, std::size_t> image;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& mem : m.nodes[i].members) {
      if (mem.ref.token >= m.selection.size() ||
          mem.ref.node >= m.selection[mem.ref.token].nodes.size()) {
        fail("member out of range: " + display_name(mem));
        continue;
      }
      const auto& dn = m.selection[mem.ref.token].nodes[mem.ref.node];
      if (dn.id != mem.id || dn.polarity != mem.polarity || dn.phon != mem.phon)
        fail("member does not match its description node: " + display_name(mem));
      if (!image.emplace(mem.ref, i).second)
        fail("description node in two merge sets: " + display_name(mem));
    }
  for (std::size_t t = 0; t < m.selection.size(); ++t)
    for (std::size_t k = 0; k < m.selection[t].nodes.size(); ++k)
      if (!image.count({t, k}))
        fail("description node not interpreted: " + m.selection[t].nodes[k].id + "@" +
             std::to_string(t));
  if (!problems.empty())
    return problems;

  auto img = [&](std::size_t t, const std::string& id) -> std::optional<std::size_t> {
    auto k = m.selection[t].index_of(id);
    if (!k)
      return std::nullopt;
    return image.at({t, *k});
  };

  // Saturation, categories, features.
  Substitution subst;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tn = m.nodes[i];
    if (tn.members.empty()) {
      fail(tn.id + " interprets no description node");
      continue;
    }
    if (!is_saturation_valid(tn.members))
      fail(tn.id + " is not saturated");
    FeatureStructure fs;
    for (const auto& mem : tn.members) {
      const auto& dn = m.selection[mem.ref.token].nodes[mem.ref.node];
      if (dn.category != tn.category)
        fail(tn.id + " mixes categories " + tn.category + "/" + dn.category);
      if (!unify_into(fs, scope_variables(dn.features, mem.ref.token), subst))
        fail(tn.id + " features do not unify");
    }
  }
  if (problems.empty()) {
    for (const auto& tn : m.nodes) {
      FeatureStructure fs;
      for (const auto& mem : tn.members)
        unify_into(fs, scope_variables(m.selection[mem.ref.token].nodes[mem.ref.node].features,
                                       mem.ref.token),
                   subst);
      if (subst.apply(fs) != tn.features)
        fail(tn.id + " carries features that are not the unification of its members");
    }
  }

  // Leaves carry exactly the phonological nodes.
  for (const auto& tn : m.nodes) {
    std::size_t anchors = 0, empties = 0;
    std::optional<std::size_t> tok;
    for (const auto& mem : tn.members) {
      if (mem.phon == Phon::Anchor) {
        ++anchors;
        tok = mem.ref.token;
      }
      if (mem.phon == Phon::Empty)
        ++empties;
    }
    if (anchors > 1)
      fail(tn.id + " carries two words");
    if (anchors && empties)
      fail(tn.id + " is both anchored and empty");
    if ((anchors || empties) && !tn.is_leaf())
      fail(tn.id + " is phonological but has children");
    if (!anchors && !empties && tn.is_leaf())
      fail(tn.id + " is a leaf without phonological content");
    if (tok != tn.token || (empties > 0) != tn.empty)
      fail(tn.id + " leaf annotations disagree with members");
  }

  auto is_ancestor_or_self = [&](std::size_t a, std::size_t b) {
    for (std::optional<std::size_t> cur = b; cur; cur = m.nodes[*cur].parent)
      if (*cur == a)
        return true;
    return false;
  };
  auto child_pos = [&](std::size_t i) {
    const auto& sibs = m.nodes[*m.nodes[i].parent].children;
    return std::find(sibs.begin(), sibs.end(), i) - sibs.begin();
  };

  // Leaf spans for yield precedence.
  std::vector<std::size_t> first(n, 0), last(n, 0);
  std::size_t leaf_counter = 0;
  std::vector<std::size_t> yield;
  for (auto i : preorder)
    if (m.nodes[i].is_leaf()) {
      first[i] = last[i] = leaf_counter++;
      if (m.nodes[i].token)
        yield.push_back(*m.nodes[i].token);
    }
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const auto& tn = m.nodes[*it];
    if (!tn.is_leaf()) {
      first[*it] = first[tn.children.front()];
      last[*it] = last[tn.children.back()];
    }
  }

  // Parenthood, sibling order, dominance, precedence of every Dap.
  std::set<std::pair<std::size_t, std::size_t>> justified;
  for (std::size_t t = 0; t < m.selection.size(); ++t) {
    const auto& d = m.selection[t];
    for (const auto& [p, kids] : d.children) {
      auto pi = img(t, p);
      std::optional<std::size_t> prev;
      for (const auto& c : kids) {
        auto ci = img(t, c);
        if (!pi || !ci) {
          fail("dangling id in " + d.word);
          continue;
        }
        if (m.nodes[*ci].parent != *pi)
          fail(c + "@" + std::to_string(t) + " is not a child of " + p);
        else {
          justified.emplace(*pi, *ci);
          if (prev && m.nodes[*prev].parent == *pi && child_pos(*prev) >= child_pos(*ci))
            fail("sibling order violated under " + p + "@" + std::to_string(t));
        }
        prev = ci;
      }
    }
    for (const auto& [a, b] : d.dominance) {
      auto ai = img(t, a), bi = img(t, b);
      if (!ai || !bi || !is_ancestor_or_self(*ai, *bi))
        fail("dominance " + a + " > " + b + " violated at token " + std::to_string(t));
    }
    for (const auto& [l, r] : d.precedence) {
      auto li = img(t, l), ri = img(t, r);
      if (!li || !ri || is_ancestor_or_self(*li, *ri) || is_ancestor_or_self(*ri, *li) ||
          last[*li] >= first[*ri])
        fail("precedence " + l + " < " + r + " violated at token " + std::to_string(t));
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    if (m.nodes[i].parent && !justified.count({*m.nodes[i].parent, i}))
      fail("tree edge into " + m.nodes[i].id + " is not induced by any description");

  std::vector<std::size_t> expected(m.tokens.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    expected[i] = i;
  if (yield != expected)
    fail("anchors are not realized in input order");
  if (m.yield_order != yield)
    fail("recorded yield_order disagrees with the tree");
  return problems;
}

namespace {

void bracket(const ParseModel& m, std::size_t i, std::ostringstream& os) {
  const auto& tn = m.nodes[i];
  os << '(' << tn.category;
  if (tn.token)
    os << ' ' << m.tokens.at(*tn.token);
  else if (tn.empty)
    os << " ε";
  for (auto c : tn.children) {
    os << ' ';
    bracket(m, c, os);
  }
  os << ')';
}

json tree_json(const ParseModel& m, std::size_t i) {
  const auto& tn = m.nodes[i];
  json j = {{"id", tn.id}, {"cat", tn.category}};
  if (tn.token) {
    j["token"] = *tn.token;
    j["word"] = m.tokens.at(*tn.token);
  }
  if (tn.empty)
    j["empty"] = true;
  if (!tn.features.empty())
    j["feats"] = tn.features;
  json kids = json::array();
  for (auto c : tn.children)
    kids.push_back(tree_json(m, c));
  j["children"] = std::move(kids);
  return j;
}

} // namespace

std::string to_bracketed(const ParseModel& m) {
  std::ostringstream os;
  if (!m.nodes.empty())
    bracket(m, 0, os);
  return os.str();
}

json to_json(const ParseModel& m) {
  json merge_map = json::object();
  for (const auto& tn : m.nodes) {
    json ids = json::array();
    for (const auto& mem : tn.members)
      ids.push_back(display_name(mem));
    merge_map[tn.id] = std::move(ids);
  }
  json selection = json::array();
  for (const auto& d : m.selection)
    selection.push_back({{"word", d.word}, {"entry", d.entry}});
  return {{"tokens", m.tokens},
          {"selection", std::move(selection)},
          {"tree", m.nodes.empty() ? json() : tree_json(m, 0)},
          {"merge_map", std::move(merge_map)},
          {"yield_order", m.yield_order},
          {"bracketed", to_bracketed(m)}};
}

} // namespace igdep
