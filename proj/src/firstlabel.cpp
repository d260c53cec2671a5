#include "treeincl/firstlabel.hpp"

#include <algorithm>

namespace treeincl {

FirstLabelIndex::FirstLabelIndex(const LabeledTree& t, FlStrategy strategy)
    : t_(&t), strategy_(strategy), same_up_(t.size(), kNone), jump_(t.size(), kNone), same_depth_(t.size(), 0) {
  for (NodeId v = 0; v < t.size(); ++v) by_label_[t.label(v)].push_back(v);
  if (strategy_ != FlStrategy::Laminar) return;

  // Preorder walk keeping, per label, the deepest node of that label on the root path.
  std::unordered_map<LabelId, NodeId> deepest;
  std::vector<NodeId> path;
  for (NodeId v = 0; v < t.size(); ++v) {
    while (!path.empty() && !t.is_ancestor(path.back(), v)) {
      const NodeId gone = path.back();
      path.pop_back();
      deepest[t.label(gone)] = same_up_[gone];
    }
    auto [it, fresh] = deepest.try_emplace(t.label(v), kNone);
    const NodeId up = it->second;
    same_up_[v] = up;
    if (up != kNone) {
      same_depth_[v] = same_depth_[up] + 1;
      const NodeId j = jump_[up];
      // skew-binary jumps: reuse the parent's jump twice when the two spans are equal
      if (j != kNone && jump_[j] != kNone && same_depth_[up] - same_depth_[j] == same_depth_[j] - same_depth_[jump_[j]])
        jump_[v] = jump_[j];
      else
        jump_[v] = up;
    }
    it->second = v;
    path.push_back(v);
  }
}

const std::vector<NodeId>& FirstLabelIndex::nodes_with(LabelId alpha) const {
  static const std::vector<NodeId> none;
  auto it = by_label_.find(alpha);
  return it == by_label_.end() ? none : it->second;
}

NodeId FirstLabelIndex::query(NodeId v, LabelId alpha) const {
  if (strategy_ == FlStrategy::Naive) return naive_fl(*t_, v, alpha);
  auto it = by_label_.find(alpha);
  if (it == by_label_.end()) return kNone;
  const auto& list = it->second;
  // Every α-ancestor-or-self of v precedes v in preorder and contains the rightmost
  // α-node u with pre(u) <= pre(v), so the answer lies on u's α-ancestor chain.
  auto pos = std::upper_bound(list.begin(), list.end(), v);
  if (pos == list.begin()) return kNone;
  NodeId u = *(pos - 1);
  while (u != kNone && !t_->is_ancestor_or_self(u, v)) {
    const NodeId j = jump_[u];
    u = (j != kNone && !t_->is_ancestor_or_self(j, v)) ? j : same_up_[u];
  }
  return u;
}

NodeList fl_indexed(const LabeledTree& t, const FirstLabelIndex& ix, const NodeList& x, LabelId alpha) {
  NodeList found;
  found.reserve(x.size());
  for (NodeId v : x)
    if (NodeId f = ix.query(v, alpha); f != kNone) found.push_back(f);
  return deep_with(TreeView{t}, found);
}

}  // namespace treeincl
