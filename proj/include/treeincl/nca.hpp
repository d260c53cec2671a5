#pragma once

#include <cstdint>
#include <vector>

#include "treeincl/tree.hpp"

namespace treeincl {

// Euler tour + sparse-table range minimum over tour depths.
class NcaIndex {
 public:
  NcaIndex() = default;
  explicit NcaIndex(const LabeledTree& t);

  NodeId query(NodeId u, NodeId v) const;
  std::size_t num_nodes() const { return first_.size(); }

  const std::vector<NodeId>& tour() const { return tour_; }
  const std::vector<std::uint32_t>& tour_depth() const { return depth_; }
  std::uint32_t first(NodeId v) const { return first_[v]; }

 private:
  std::uint32_t argmin(std::uint32_t a, std::uint32_t b) const {
    return depth_[a] <= depth_[b] ? a : b;
  }

  std::vector<NodeId> tour_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> first_;
  // table_[k][i] = tour position of the minimum depth in [i, i + 2^k)
  std::vector<std::vector<std::uint32_t>> table_;
};

// Walks both nodes up to equal depth and then in lockstep. Reference for tests.
NodeId naive_nca(const LabeledTree& t, NodeId u, NodeId v);

}  // namespace treeincl
