#pragma once

// Hand-rolled generators shared by the unit tests and the acceptance suite.

#include <algorithm>
#include <string>
#include <vector>

#include "treeincl/generate.hpp"
#include "treeincl/node_list.hpp"
#include "treeincl/tree.hpp"

namespace treeincl::testing {

using gen::Rng;

inline bool coin(Rng& rng, unsigned num, unsigned den) { return gen::below(rng, den) < num; }

// Random subset of the nodes, each kept with probability num/den, in preorder.
inline NodeList random_subset(const LabeledTree& t, Rng& rng, unsigned num, unsigned den) {
  NodeList out;
  for (NodeId v = 0; v < t.size(); ++v)
    if (coin(rng, num, den)) out.push_back(v);
  return out;
}

// Deep set: a random subset with every node that has a chosen descendant removed.
inline NodeList random_deep(const LabeledTree& t, Rng& rng, unsigned num = 1, unsigned den = 4) {
  NodeList x = random_subset(t, rng, num, den);
  return deep(t, x);
}

inline NodePairList identity_pairs(const NodeList& x) {
  NodePairList u;
  for (NodeId v : x) u.push_back({v, v});
  return u;
}

inline NodeList sorted_unique(NodeList x) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

inline std::string show(const NodeList& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
  return s + "]";
}

inline std::string show(const NodePairList& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (i ? " " : "") + std::string("(") + std::to_string(x[i].first) + "," + std::to_string(x[i].second) + ")";
  return s + "]";
}

}  // namespace treeincl::testing
