#include "igdep/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace igdep {

namespace {

struct Node {
  DescRef ref;
  const DapNode* dn;
};

class Enumerator {
public:
  Enumerator(std::span<const std::string> tokens, const LexicalSelection& sel, std::size_t index,
             bool intra, std::map<std::string, ParseModel>& out)
      : tokens_(tokens), sel_(sel), index_(index), intra_(intra), out_(out) {
    for (std::size_t t = 0; t < sel.picks.size(); ++t)
      for (std::size_t k = 0; k < sel.picks[t]->nodes.size(); ++k)
        nodes_.push_back({{t, k}, &sel.picks[t]->nodes[k]});
  }

  std::size_t size() const { return nodes_.size(); }

  void run() { assign(0); }

private:
  // Restricted-growth enumeration of set partitions. A block is abandoned as
  // soon as it mixes categories, holds two nodes of one Dap, or its
  // polarities fail to compose: none of these can be undone by adding nodes.
  void assign(std::size_t i) {
    if (i == nodes_.size()) {
      check_partition();
      return;
    }
    const auto& n = nodes_[i];
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& blk = blocks_[b];
      const auto& first = nodes_[blk.front()];
      if (first.dn->category != n.dn->category)
        continue;
      if (!intra_ && std::any_of(blk.begin(), blk.end(), [&](std::size_t j) {
            return nodes_[j].ref.token == n.ref.token;
          }))
        continue;
      std::vector<Polarity> ps;
      for (auto j : blk)
        ps.push_back(nodes_[j].dn->polarity);
      ps.push_back(n.dn->polarity);
      if (!compose_multiset(ps))
        continue;
      // deeper levels append blocks, so blocks_[b] is re-indexed each time
      blocks_[b].push_back(i);
      assign(i + 1);
      blocks_[b].pop_back();
    }
    blocks_.push_back({i});
    assign(i + 1);
    blocks_.pop_back();
  }

  void check_partition() {
    for (const auto& blk : blocks_) {
      std::vector<Polarity> ps;
      for (auto j : blk)
        ps.push_back(nodes_[j].dn->polarity);
      if (!is_saturation_valid(ps))
        return;
    }

    std::map<DescRef, std::size_t> block_of;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (auto j : blocks_[b])
        block_of[nodes_[j].ref] = b;

    // Tree edges come from description parenthood only.
    std::vector<std::optional<std::size_t>> parent(blocks_.size());
    std::vector<std::vector<std::size_t>> kids(blocks_.size());
    for (std::size_t t = 0; t < sel_.picks.size(); ++t) {
      const Dap& d = *sel_.picks[t];
      for (const auto& [p, cs] : d.children)
        for (const auto& c : cs) {
          auto pb = block_of.at({t, *d.index_of(p)});
          auto cb = block_of.at({t, *d.index_of(c)});
          if (pb == cb || (parent[cb] && *parent[cb] != pb))
            return;
          if (!parent[cb]) {
            parent[cb] = pb;
            kids[pb].push_back(cb);
          }
        }
    }
    std::optional<std::size_t> root;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (!parent[b]) {
        if (root)
          return;
        root = b;
      }
    if (!root)
      return;

    ModelSkeleton sk;
    sk.root = *root;
    for (const auto& blk : blocks_) {
      std::vector<DescRef> refs;
      for (auto j : blk)
        refs.push_back(nodes_[j].ref);
      sk.blocks.push_back(std::move(refs));
    }
    for (auto& k : kids)
      std::sort(k.begin(), k.end());
    sk.children = kids;

    // Every permutation of every child list.
    std::function<void(std::size_t)> permute = [&](std::size_t b) {
      if (b == kids.size()) {
        auto m = materialize(tokens_, sel_, index_, sk);
        if (m && verify_model(*m).empty())
          out_.emplace(m->canonical_key(), std::move(*m));
        return;
      }
      auto& order = sk.children[b];
      std::sort(order.begin(), order.end());
      do
        permute(b + 1);
      while (std::next_permutation(order.begin(), order.end()));
    };
    permute(0);
  }

  std::span<const std::string> tokens_;
  const LexicalSelection& sel_;
  std::size_t index_;
  bool intra_;
  std::map<std::string, ParseModel>& out_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> blocks_;
};

} // namespace

std::vector<ParseModel> oracle_parse(const GrammarLexicon& g, std::span<const std::string> tokens,
                                     const SearchOptions& options) {
  std::map<std::string, ParseModel> found;
  auto selections = lexical_selections(g, tokens);
  for (std::size_t i = 0; i < selections.size(); ++i) {
    Enumerator e(tokens, selections[i], i, options.allow_intra_dap, found);
    if (e.size() > kOracleNodeCap)
      throw OracleCapExceeded(e.size());
  }
  for (std::size_t i = 0; i < selections.size(); ++i)
    Enumerator(tokens, selections[i], i, options.allow_intra_dap, found).run();

  std::vector<ParseModel> out;
  for (auto& [_, m] : found)
    out.push_back(std::move(m));
  return out;
}

} // namespace igdep
