#pragma once

#include <set>
#include <vector>

#include "treeincl/node_list.hpp"
#include "treeincl/tree.hpp"

// Slow reference implementations used to check the engines.
namespace treeincl::oracle {

// incl[v][w] = P(v) ⊑ T(w)
class InclusionTable {
 public:
  InclusionTable(std::size_t np, std::size_t nt) : np_(np), nt_(nt), bits_(np * nt, 0) {}
  bool at(NodeId v, NodeId w) const { return bits_[std::size_t{v} * nt_ + w] != 0; }
  void set(NodeId v, NodeId w) { bits_[std::size_t{v} * nt_ + w] = 1; }
  std::size_t pattern_size() const { return np_; }
  std::size_t target_size() const { return nt_; }

 private:
  std::size_t np_, nt_;
  std::vector<char> bits_;
};

// Leftmost-inclusion dynamic program: children of v are matched greedily, each to the
// candidate subtree that closes first in postorder.
InclusionTable km_dp(const LabeledTree& p, const LabeledTree& t);

// w with incl[root][w] and no child with incl[root][child], in preorder
NodeList deep_occurrences(const LabeledTree& t, const InclusionTable& incl);
// every w with incl[root][w], in preorder
NodeList including_roots(const LabeledTree& t, const InclusionTable& incl);

// Enumerates the tuples of Φ(X1..Xk) and keeps (x1, xk) when no other tuple is
// strictly inside it.
std::set<NodePair> brute_mop(const LabeledTree& t, const std::vector<NodeList>& sets);

inline constexpr std::size_t kBruteMaxPattern = 6;
inline constexpr std::size_t kBruteMaxTarget = 12;

// Exhaustive search over injective maps; throws std::length_error above the size limits.
NodeList brute_emb(const LabeledTree& p, const LabeledTree& t);

}  // namespace treeincl::oracle
