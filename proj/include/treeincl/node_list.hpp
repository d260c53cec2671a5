#pragma once

#include <cstddef>
#include <vector>

#include "treeincl/nca.hpp"
#include "treeincl/tree.hpp"

namespace treeincl {

using NodeList = std::vector<NodeId>;

struct NodePair {
  NodeId first;
  NodeId second;
  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};
using NodePairList = std::vector<NodePair>;

// X[i] ◁ X[i+1] for all i
bool is_ordered(const LabeledTree& t, const NodeList& x);
// X[i] ⊴ X[i+1] for all i
bool is_semiordered(const LabeledTree& t, const NodeList& x);
bool is_ordered(const LabeledTree& t, const NodePairList& y);
NodeList firsts(const NodePairList& y);
NodeList seconds(const NodePairList& y);

// Adapter giving the set procedures below a uniform view of a tree.
struct TreeView {
  const LabeledTree& t;
  NodeId parent(NodeId v) const { return t.parent(v); }
  bool ancestor_or_self(NodeId a, NodeId b) const { return t.is_ancestor_or_self(a, b); }
  bool left_of(NodeId a, NodeId b) const { return t.left_of(a, b); }
};

NodeList parent_list(const LabeledTree& t, const NodeList& x);
NodeList nca_pairs(const NcaIndex& nca, const NodePairList& y);

template <class View>
NodeList deep_with(const View& view, const NodeList& x) {
  NodeList out;
  if (x.empty()) return out;
  out.reserve(x.size());
  NodeId cur = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    NodeId y = x[i];
    if (view.left_of(cur, y)) {
      out.push_back(cur);
      cur = y;
    } else if (view.ancestor_or_self(cur, y)) {
      cur = y;
    }
    // otherwise y is an ancestor of cur and is dropped
  }
  out.push_back(cur);
  return out;
}

NodeList deep(const LabeledTree& t, const NodeList& x);

NodePairList mop_right(const LabeledTree& t, const NodePairList& y, const NodeList& x);
NodePairList mop_left(const LabeledTree& t, const NodeList& x, const NodePairList& y);

// Doubly linked list L with an embedded sublist Z, both stored as index links into
// one cell array. Cells are never reused; removed cells are simply unlinked.
class DeepStarList {
 public:
  static constexpr std::uint32_t kNil = 0xFFFFFFFFu;

  DeepStarList(const NodeList& l, const std::vector<bool>& in_z);
  explicit DeepStarList(const NodeList& l) : DeepStarList(l, std::vector<bool>(l.size(), true)) {}

  std::uint32_t z_head() const { return z_head_; }
  std::uint32_t z_next(std::uint32_t c) const { return succ_z_[c]; }
  NodeId value(std::uint32_t c) const { return value_[c]; }
  void set_value(std::uint32_t c, NodeId v) { value_[c] = v; }
  std::size_t z_size() const { return z_size_; }

  void unlink_z(std::uint32_t c);
  void unlink(std::uint32_t c);  // from both L and Z

  // Removes every z ∈ Z that has a descendant or an equal copy in L. Only the L
  // neighbours of each z are inspected.
  template <class View>
  void deep_star(const View& view) {
    for (std::uint32_t c = z_head_; c != kNil;) {
      std::uint32_t next = succ_z_[c];
      NodeId z = value_[c];
      std::uint32_t p = pred_l_[c], s = succ_l_[c];
      if ((p != kNil && view.ancestor_or_self(z, value_[p])) ||
          (s != kNil && view.ancestor_or_self(z, value_[s])))
        unlink(c);
      c = next;
    }
  }

  NodeList l_list() const;
  NodeList z_list() const;

 private:
  std::vector<NodeId> value_;
  std::vector<std::uint32_t> succ_l_, pred_l_, succ_z_, pred_z_;
  std::vector<bool> in_z_;
  std::uint32_t l_head_ = kNil, z_head_ = kNil;
  std::size_t z_size_ = 0;
};

// Bottom-up first-label search. `matches(v)` decides whether v carries the label,
// `view.parent` walks upward (kNone at the root). If z_touched is given, the
// number of Z cells alive at the start of each round is added to it.
template <class View, class Match>
NodeList fl_bottom_up_with(const View& view, const NodeList& x, Match matches,
                           std::size_t* z_touched = nullptr) {
  DeepStarList dl(x);
  while (dl.z_size() > 0) {
    if (z_touched) *z_touched += dl.z_size();
    for (std::uint32_t c = dl.z_head(); c != DeepStarList::kNil;) {
      std::uint32_t next = dl.z_next(c);
      NodeId z = dl.value(c);
      if (matches(z)) {
        dl.unlink_z(c);
      } else if (NodeId p = view.parent(z); p != kNone) {
        dl.set_value(c, p);
      } else {
        dl.unlink(c);
      }
      c = next;
    }
    dl.deep_star(view);
  }
  return dl.l_list();
}

NodeList fl_bottom_up(const LabeledTree& t, const NodeList& x, LabelId alpha,
                      std::size_t* z_touched = nullptr);

// fl(v, α) by walking parents; kNone if no such ancestor.
NodeId naive_fl(const LabeledTree& t, NodeId v, LabelId alpha);

}  // namespace treeincl
