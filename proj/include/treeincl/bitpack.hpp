#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeincl/cluster.hpp"
#include "treeincl/node_list.hpp"

namespace treeincl {

// Cluster procedures on one cluster. Sets are 64-bit words, bit i being the node with
// cluster-local preorder number i. Inputs to mop, match and nca are expected deep.
namespace micro {

struct Shape {
  const std::uint64_t* anc;    // anc[i]: ancestors of i including i
  const std::uint8_t* end;     // subtree of i is [i, end[i])
  const std::uint8_t* parent;  // kNoLocal at index 0
  unsigned size;
};

inline unsigned size(std::uint64_t x) { return static_cast<unsigned>(__builtin_popcountll(x)); }
std::uint64_t left(unsigned k, std::uint64_t x);
std::uint64_t right(unsigned k, std::uint64_t x);
// nodes of x left of the leftmost node of y (x itself when y is empty)
std::uint64_t leftof(const Shape& c, std::uint64_t x, std::uint64_t y);
// nodes of x right of the rightmost node of y (x itself when y is empty)
std::uint64_t rightof(const Shape& c, std::uint64_t x, std::uint64_t y);
// {x_j : y_j ∈ z} for |x| = |y|, z ⊆ y
std::uint64_t match(std::uint64_t x, std::uint64_t y, std::uint64_t z);
std::pair<std::uint64_t, std::uint64_t> mop(const Shape& c, std::uint64_t x, std::uint64_t y);
std::uint64_t parent(const Shape& c, std::uint64_t x);
// {nca(x_j, y_j)} pairing the two sets by rank
std::uint64_t nca(const Shape& c, std::uint64_t x, std::uint64_t y);
std::uint64_t deep(const Shape& c, std::uint64_t x);
// every ancestor of a node of x, the nodes of x included
std::uint64_t ancestor(const Shape& c, std::uint64_t x);
// deep(ancestor(x) ∩ eq)
inline std::uint64_t fl(const Shape& c, std::uint64_t x, std::uint64_t eq) {
  return deep(c, ancestor(c, x) & eq);
}

enum class Op : std::uint8_t { Left, Right, Leftof, Rightof, Match, Mop, Parent, Nca, Deep, Ancestor, Fl };

// Memo table for cluster procedures keyed by (shape encoding, op, operands). Safe for
// concurrent lookup-or-insert.
class Memo {
 public:
  using Result = std::pair<std::uint64_t, std::uint64_t>;
  template <class F>
  Result get(std::pair<std::uint64_t, std::uint64_t> shape, Op op, std::uint64_t a, std::uint64_t b,
             std::uint64_t c, F compute) {
    Key k{shape.first, shape.second, a, b, c, op};
    {
      std::lock_guard<std::mutex> g(mu_);
      if (auto it = map_.find(k); it != map_.end()) {
        ++hits_;
        return it->second;
      }
    }
    Result r = compute();
    std::lock_guard<std::mutex> g(mu_);
    map_.emplace(k, r);
    return r;
  }
  std::size_t hits() const {
    std::lock_guard<std::mutex> g(mu_);
    return hits_;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> g(mu_);
    return map_.size();
  }

 private:
  struct Key {
    std::uint64_t s0, s1, a, b, c;
    Op op;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 0x9E3779B97F4A7C15ull;
      for (std::uint64_t v : {k.s0, k.s1, k.a, k.b, k.c, std::uint64_t(k.op)})
        h = (h ^ v) * 0xFF51AFD7ED558CCDull, h ^= h >> 29;
      return static_cast<std::size_t>(h);
    }
  };
  mutable std::mutex mu_;
  std::unordered_map<Key, Result, Hash> map_;
  std::size_t hits_ = 0;
};

}  // namespace micro

using NodeArray = std::vector<std::uint64_t>;

struct PairArray {
  NodeArray first, second;
};

// Node-array set procedures over a clustered binary tree.
class ClusteredIndex {
 public:
  // Clusters of at most `cluster_size` (<= 64) nodes. The tree must be binary with at
  // least two nodes.
  ClusteredIndex(const LabeledTree& binary, std::uint32_t cluster_size);
  ClusteredIndex(const LabeledTree& binary, ClusterPartition cp);

  const MacroTree& macro() const { return mt_; }
  const LabeledTree& tree() const { return mt_.tree(); }
  std::size_t size() const { return mt_.size(); }

  NodeArray empty() const { return NodeArray(mt_.size(), 0); }
  NodeArray from_list(const NodeList& x) const;
  // nodes in preorder
  NodeList to_list(const NodeArray& x) const;
  PairArray from_pairs(const NodePairList& p) const;
  NodePairList to_pairs(const PairArray& p) const;
  NodeArray leaves() const;
  std::size_t count(const NodeArray& x) const;
  bool is_empty(const NodeArray& x) const;
  // every entry within the mask of its macro node
  bool well_formed(const NodeArray& x) const;

  micro::Shape shape(std::uint32_t k) const {
    return {mt_.local_anc_row(k), mt_.local_end_row(k), mt_.local_parent_row(k), mt_.cluster_size(k)};
  }

  NodeArray parent(const NodeArray& x) const;
  NodeArray nca(NodeArray x, NodeArray y) const;
  NodeArray nca(const PairArray& u) const { return nca(u.first, u.second); }
  NodeArray deep(NodeArray x) const;
  PairArray mop_sim(NodeArray x, const NodeArray& y) const;
  NodeArray match(NodeArray x, NodeArray y, NodeArray yp) const;
  PairArray mop_right(const PairArray& u, const NodeArray& z) const;
  PairArray mop_left(const NodeArray& z, const PairArray& u) const;
  NodeArray fl(const NodeArray& x, LabelId alpha) const;

  // Route the cluster procedures through a shared memo table (nullptr turns it off).
  void set_memo(std::shared_ptr<micro::Memo> memo);

 private:
  // local word of cluster k holding its top and bottom boundary entries
  std::uint64_t boundary_word(std::uint32_t k, const NodeArray& x) const;
  // distribute a local word of cluster k over the macro nodes of that cluster
  void scatter(std::uint32_t k, std::uint64_t w, NodeArray& r) const;
  std::uint64_t first_bits(std::uint32_t j) const;
  std::uint64_t own_mask(std::uint32_t i) const { return mt_.node(i).mask; }

  std::uint64_t m_deep(std::uint32_t k, std::uint64_t x) const;
  std::uint64_t m_parent(std::uint32_t k, std::uint64_t x) const;
  std::uint64_t m_nca(std::uint32_t k, std::uint64_t x, std::uint64_t y) const;
  std::pair<std::uint64_t, std::uint64_t> m_mop(std::uint32_t k, std::uint64_t x, std::uint64_t y) const;
  std::uint64_t m_fl(std::uint32_t k, std::uint64_t x, std::uint64_t eq) const;

  MacroTree mt_;
  NodeArray leaves_;
  std::shared_ptr<micro::Memo> memo_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shape_codes_;
};

}  // namespace treeincl
