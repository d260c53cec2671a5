#include "treeincl/nca.hpp"

#include <bit>
#include <stdexcept>

namespace treeincl {

NcaIndex::NcaIndex(const LabeledTree& t) {
  const std::size_t n = t.size();
  first_.assign(n, 0);
  if (n == 0) return;
  tour_.reserve(2 * n - 1);
  depth_.reserve(2 * n - 1);

  // iterative DFS; next_child[v] is the index of the next child to descend into
  std::vector<std::uint32_t> next_child(n, 0);
  std::vector<NodeId> stack{t.root()};
  first_[t.root()] = 0;
  tour_.push_back(t.root());
  depth_.push_back(0);
  while (!stack.empty()) {
    NodeId v = stack.back();
    auto ks = t.children(v);
    if (next_child[v] < ks.size()) {
      NodeId c = ks[next_child[v]++];
      first_[c] = static_cast<std::uint32_t>(tour_.size());
      tour_.push_back(c);
      depth_.push_back(t.depth(c));
      stack.push_back(c);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        tour_.push_back(stack.back());
        depth_.push_back(t.depth(stack.back()));
      }
    }
  }

  const std::size_t m = tour_.size();
  const int levels = std::bit_width(m);
  table_.resize(levels);
  table_[0].resize(m);
  for (std::uint32_t i = 0; i < m; ++i) table_[0][i] = i;
  for (int k = 1; k < levels; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    const std::size_t len = m - (std::size_t{1} << k) + 1;
    table_[k].resize(len);
    for (std::size_t i = 0; i < len; ++i)
      table_[k][i] = argmin(table_[k - 1][i], table_[k - 1][i + half]);
  }
}

NodeId NcaIndex::query(NodeId u, NodeId v) const {
  if (u >= first_.size() || v >= first_.size()) throw std::out_of_range("nca: invalid node id");
  std::uint32_t a = first_[u], b = first_[v];
  if (a > b) std::swap(a, b);
  const int k = std::bit_width(b - a + 1) - 1;
  return tour_[argmin(table_[k][a], table_[k][b + 1 - (1u << k)])];
}

NodeId naive_nca(const LabeledTree& t, NodeId u, NodeId v) {
  while (t.depth(u) > t.depth(v)) u = t.parent(u);
  while (t.depth(v) > t.depth(u)) v = t.parent(v);
  while (u != v) {
    u = t.parent(u);
    v = t.parent(v);
  }
  return u;
}

}  // namespace treeincl
