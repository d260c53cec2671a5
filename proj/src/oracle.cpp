#include "treeincl/oracle.hpp"

#include <functional>
#include <stdexcept>

namespace treeincl::oracle {

namespace {

// label_eq[v][w] for pattern node v and target node w, compared by name
std::vector<std::vector<char>> label_table(const LabeledTree& p, const LabeledTree& t) {
  std::vector<std::vector<char>> eq(p.size(), std::vector<char>(t.size(), 0));
  for (NodeId v = 0; v < p.size(); ++v) {
    const std::string& a = p.alphabet().name(p.label(v));
    for (NodeId w = 0; w < t.size(); ++w) eq[v][w] = a == t.alphabet().name(t.label(w));
  }
  return eq;
}

}  // namespace

InclusionTable km_dp(const LabeledTree& p, const LabeledTree& t) {
  InclusionTable incl(p.size(), t.size());
  const auto eq = label_table(p, t);
  for (NodeId v = static_cast<NodeId>(p.size()); v-- > 0;) {
    for (NodeId w = static_cast<NodeId>(t.size()); w-- > 0;) {
      bool ok = false;
      for (NodeId c : t.children(w))
        if (incl.at(v, c)) ok = true;
      if (!ok && eq[v][w]) {
        // place the children of v left to right inside T(w) below w
        NodeId from = w + 1;
        const NodeId stop = w + t.subtree_size(w);
        ok = true;
        for (NodeId vc : p.children(v)) {
          NodeId best = kNone;
          for (NodeId x = from; x < stop; ++x)
            if (incl.at(vc, x) && (best == kNone || t.post(x) < t.post(best))) best = x;
          if (best == kNone) {
            ok = false;
            break;
          }
          from = best + t.subtree_size(best);
        }
      }
      if (ok) incl.set(v, w);
    }
  }
  return incl;
}

NodeList including_roots(const LabeledTree& t, const InclusionTable& incl) {
  NodeList out;
  if (incl.pattern_size() == 0) return out;
  for (NodeId w = 0; w < t.size(); ++w)
    if (incl.at(0, w)) out.push_back(w);
  return out;
}

NodeList deep_occurrences(const LabeledTree& t, const InclusionTable& incl) {
  NodeList out;
  if (incl.pattern_size() == 0) return out;
  for (NodeId w = 0; w < t.size(); ++w) {
    if (!incl.at(0, w)) continue;
    bool deeper = false;
    for (NodeId c : t.children(w)) deeper = deeper || incl.at(0, c);
    if (!deeper) out.push_back(w);
  }
  return out;
}

std::set<NodePair> brute_mop(const LabeledTree& t, const std::vector<NodeList>& sets) {
  if (sets.size() < 2) throw std::invalid_argument("brute_mop needs at least two sets");
  // Φ as (first, last) of every ◁-chain picking one node from each set in turn
  std::vector<NodePair> phi;
  std::vector<NodeId> chain;
  std::function<void(std::size_t)> extend = [&](std::size_t level) {
    if (level == sets.size()) {
      phi.push_back({chain.front(), chain.back()});
      return;
    }
    for (NodeId x : sets[level]) {
      if (level > 0 && !t.left_of(chain.back(), x)) continue;
      chain.push_back(x);
      extend(level + 1);
      chain.pop_back();
    }
  };
  extend(0);

  auto unlhd = [&](NodeId u, NodeId w) { return t.left_or_related(u, w); };
  std::set<NodePair> out;
  for (const auto& [x1, xk] : phi) {
    bool minimal = true;
    for (const auto& [y1, yk] : phi) {
      if (y1 == x1 && yk == xk) continue;
      if ((t.left_of(x1, y1) && t.left_of(y1, yk) && unlhd(yk, xk)) ||
          (unlhd(x1, y1) && t.left_of(y1, yk) && t.left_of(yk, xk))) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert({x1, xk});
  }
  return out;
}

NodeList brute_emb(const LabeledTree& p, const LabeledTree& t) {
  if (p.size() > kBruteMaxPattern || t.size() > kBruteMaxTarget)
    throw std::length_error("brute_emb: instance exceeds the search budget");
  NodeList roots;
  if (p.empty() || t.empty()) return roots;
  const auto eq = label_table(p, t);
  std::vector<char> is_root(t.size(), 0);
  std::vector<NodeId> f(p.size(), kNone);
  std::vector<char> used(t.size(), 0);

  // P is assigned in preorder, so every earlier u is an ancestor of v or left of it
  std::function<void(NodeId)> assign = [&](NodeId v) {
    if (v == p.size()) {
      is_root[f[0]] = 1;
      return;
    }
    for (NodeId w = 0; w < t.size(); ++w) {
      if (used[w] || !eq[v][w]) continue;
      bool ok = true;
      for (NodeId u = 0; u < v && ok; ++u) {
        const bool anc = p.is_ancestor(u, v);
        ok = anc ? t.is_ancestor(f[u], w) : t.left_of(f[u], w);
      }
      if (!ok) continue;
      f[v] = w;
      used[w] = 1;
      assign(v + 1);
      used[w] = 0;
    }
  };
  assign(0);

  for (NodeId w = 0; w < t.size(); ++w) {
    if (!is_root[w]) continue;
    bool deeper = false;
    for (NodeId x = w + 1; x < w + t.subtree_size(w); ++x) deeper = deeper || is_root[x];
    if (!deeper) roots.push_back(w);
  }
  return roots;
}

}  // namespace treeincl::oracle
