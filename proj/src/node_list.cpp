#include "treeincl/node_list.hpp"

#include <algorithm>

namespace treeincl {

bool is_ordered(const LabeledTree& t, const NodeList& x) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!t.left_of(x[i - 1], x[i])) return false;
  return true;
}

bool is_semiordered(const LabeledTree& t, const NodeList& x) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!t.left_or_related(x[i - 1], x[i])) return false;
  return true;
}

bool is_ordered(const LabeledTree& t, const NodePairList& y) {
  for (std::size_t i = 1; i < y.size(); ++i)
    if (!t.left_of(y[i - 1].first, y[i].first) || !t.left_of(y[i - 1].second, y[i].second))
      return false;
  return true;
}

NodeList firsts(const NodePairList& y) {
  NodeList out(y.size());
  std::transform(y.begin(), y.end(), out.begin(), [](const NodePair& p) { return p.first; });
  return out;
}

NodeList seconds(const NodePairList& y) {
  NodeList out(y.size());
  std::transform(y.begin(), y.end(), out.begin(), [](const NodePair& p) { return p.second; });
  return out;
}

NodeList parent_list(const LabeledTree& t, const NodeList& x) {
  NodeList out;
  out.reserve(x.size());
  for (NodeId v : x)
    if (NodeId p = t.parent(v); p != kNone) out.push_back(p);
  return out;
}

NodeList nca_pairs(const NcaIndex& nca, const NodePairList& y) {
  NodeList out;
  out.reserve(y.size());
  for (const auto& p : y) out.push_back(nca.query(p.first, p.second));
  return out;
}

NodeList deep(const LabeledTree& t, const NodeList& x) {
#ifndef NDEBUG
  if (!is_semiordered(t, x)) throw std::logic_error("deep: input not semiordered");
#endif
  return deep_with(TreeView{t}, x);
}

NodePairList mop_right(const LabeledTree& t, const NodePairList& y, const NodeList& x) {
  NodePairList r;
  if (y.empty() || x.empty()) return r;
  std::size_t j = 0;
  while (j < x.size() && !t.left_of(y[0].second, x[j])) ++j;
  if (j == x.size()) return r;
  NodeId cy = y[0].first, cx = x[j];
  for (std::size_t i = 1; i < y.size(); ++i) {
    while (j < x.size() && !t.left_of(y[i].second, x[j])) ++j;
    if (j == x.size()) break;
    if (cx != x[j]) {
      r.push_back({cy, cx});
      cx = x[j];
    }
    cy = y[i].first;
  }
  r.push_back({cy, cx});
  return r;
}

// Mirror image of mop_right: scan both lists from the right with ▷ in place of ◁.
// Pairs are produced right to left and reversed at the end so the output is ordered.
NodePairList mop_left(const LabeledTree& t, const NodeList& x, const NodePairList& y) {
  NodePairList r;
  if (y.empty() || x.empty()) return r;
  std::size_t i = y.size() - 1;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(x.size()) - 1;
  while (j >= 0 && !t.left_of(x[j], y[i].first)) --j;
  if (j < 0) return r;
  NodeId cy = y[i].second, cx = x[j];
  while (i-- > 0) {
    while (j >= 0 && !t.left_of(x[j], y[i].first)) --j;
    if (j < 0) break;
    if (cx != x[j]) {
      r.push_back({cx, cy});
      cx = x[j];
    }
    cy = y[i].second;
  }
  r.push_back({cx, cy});
  std::reverse(r.begin(), r.end());
  return r;
}

DeepStarList::DeepStarList(const NodeList& l, const std::vector<bool>& in_z)
    : value_(l), in_z_(in_z) {
  const auto n = static_cast<std::uint32_t>(l.size());
  succ_l_.resize(n);
  pred_l_.resize(n);
  succ_z_.assign(n, kNil);
  pred_z_.assign(n, kNil);
  for (std::uint32_t k = 0; k < n; ++k) {
    succ_l_[k] = k + 1 < n ? k + 1 : kNil;
    pred_l_[k] = k > 0 ? k - 1 : kNil;
  }
  l_head_ = n > 0 ? 0 : kNil;
  std::uint32_t last = kNil;
  for (std::uint32_t k = 0; k < n; ++k) {
    if (!in_z_[k]) continue;
    if (last == kNil) z_head_ = k;
    else succ_z_[last] = k;
    pred_z_[k] = last;
    last = k;
    ++z_size_;
  }
}

void DeepStarList::unlink_z(std::uint32_t c) {
  if (!in_z_[c]) return;
  in_z_[c] = false;
  --z_size_;
  if (pred_z_[c] != kNil) succ_z_[pred_z_[c]] = succ_z_[c];
  else z_head_ = succ_z_[c];
  if (succ_z_[c] != kNil) pred_z_[succ_z_[c]] = pred_z_[c];
}

void DeepStarList::unlink(std::uint32_t c) {
  unlink_z(c);
  if (pred_l_[c] != kNil) succ_l_[pred_l_[c]] = succ_l_[c];
  else l_head_ = succ_l_[c];
  if (succ_l_[c] != kNil) pred_l_[succ_l_[c]] = pred_l_[c];
}

NodeList DeepStarList::l_list() const {
  NodeList out;
  for (std::uint32_t c = l_head_; c != kNil; c = succ_l_[c]) out.push_back(value_[c]);
  return out;
}

NodeList DeepStarList::z_list() const {
  NodeList out;
  for (std::uint32_t c = z_head_; c != kNil; c = succ_z_[c]) out.push_back(value_[c]);
  return out;
}

NodeList fl_bottom_up(const LabeledTree& t, const NodeList& x, LabelId alpha, std::size_t* z_touched) {
  return fl_bottom_up_with(TreeView{t}, x, [&](NodeId v) { return t.label(v) == alpha; }, z_touched);
}

NodeId naive_fl(const LabeledTree& t, NodeId v, LabelId alpha) {
  while (v != kNone && t.label(v) != alpha) v = t.parent(v);
  return v;
}

}  // namespace treeincl
