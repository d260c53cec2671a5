#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "treeincl/node_list.hpp"
#include "treeincl/tree.hpp"

namespace treeincl {

// Naive walks parents. Laminar binary-searches the α-nodes by preorder and then climbs
// the chain of nested α-ancestors with skew-binary jump pointers: O(log n) per query,
// three words per node.
enum class FlStrategy { Naive, Laminar };

class FirstLabelIndex {
 public:
  explicit FirstLabelIndex(const LabeledTree& t, FlStrategy strategy = FlStrategy::Laminar);

  // Nearest v' ⪯ v with label α, or kNone.
  NodeId query(NodeId v, LabelId alpha) const;

  FlStrategy strategy() const { return strategy_; }
  // preorder-sorted nodes carrying α (empty if the label does not occur)
  const std::vector<NodeId>& nodes_with(LabelId alpha) const;
  std::size_t num_labels() const { return by_label_.size(); }

 private:
  const LabeledTree* t_;
  FlStrategy strategy_;
  std::unordered_map<LabelId, std::vector<NodeId>> by_label_;
  // per node: nearest proper ancestor with the same label, its jump pointer, and the
  // number of same-label proper ancestors
  std::vector<NodeId> same_up_, jump_;
  std::vector<std::uint32_t> same_depth_;
};

// Deep({fl(x, α) : x ∈ X}) through the index.
NodeList fl_indexed(const LabeledTree& t, const FirstLabelIndex& ix, const NodeList& x, LabelId alpha);

}  // namespace treeincl
