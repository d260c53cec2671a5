#include "treeincl/bitpack.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "treeincl/kernels.hpp"

namespace treeincl {

namespace micro {

namespace {
inline std::uint64_t bit(unsigned i) { return std::uint64_t{1} << i; }
inline unsigned low(std::uint64_t x) { return static_cast<unsigned>(std::countr_zero(x)); }
inline unsigned high(std::uint64_t x) { return 63u - static_cast<unsigned>(std::countl_zero(x)); }
}  // namespace

std::uint64_t left(unsigned k, std::uint64_t x) { return kernels::keep_lowest(x, k); }
std::uint64_t right(unsigned k, std::uint64_t x) { return kernels::keep_highest(x, k); }

std::uint64_t leftof(const Shape& c, std::uint64_t x, std::uint64_t y) {
  if (y == 0) return x;
  const unsigned first = low(y);
  std::uint64_t out = 0;
  for (std::uint64_t rest = x & kernels::low_mask(first); rest; rest &= rest - 1) {
    unsigned b = low(rest);
    if (c.end[b] <= first) out |= bit(b);
  }
  return out;
}

std::uint64_t rightof(const Shape& c, std::uint64_t x, std::uint64_t y) {
  if (y == 0) return x;
  return x & ~kernels::low_mask(c.end[high(y)]);
}

std::uint64_t match(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  const auto& k = kernels::active();
  return k.deposit(k.extract(z, y), x);
}

std::pair<std::uint64_t, std::uint64_t> mop(const Shape& c, std::uint64_t x, std::uint64_t y) {
  std::uint64_t r1 = 0, r2 = 0;
  unsigned cx = 64, cy = 64;
  for (; x; x &= x - 1) {
    unsigned b = low(x);
    std::uint64_t after = y & ~kernels::low_mask(c.end[b]);
    if (!after) break;
    unsigned t = low(after);
    if (t != cy) {
      if (cy != 64) r1 |= bit(cx), r2 |= bit(cy);
      cy = t;
    }
    cx = b;
  }
  if (cy != 64) r1 |= bit(cx), r2 |= bit(cy);
  return {r1, r2};
}

std::uint64_t parent(const Shape& c, std::uint64_t x) {
  std::uint64_t out = 0;
  for (x &= ~std::uint64_t{1}; x; x &= x - 1) out |= bit(c.parent[low(x)]);
  return out;
}

std::uint64_t nca(const Shape& c, std::uint64_t x, std::uint64_t y) {
  std::uint64_t out = 0;
  for (; x && y; x &= x - 1, y &= y - 1) out |= bit(high(c.anc[low(x)] & c.anc[low(y)]));
  return out;
}

std::uint64_t deep(const Shape& c, std::uint64_t x) {
  std::uint64_t out = x;
  for (std::uint64_t rest = x; rest; rest &= rest - 1) {
    unsigned b = low(rest);
    std::uint64_t below = kernels::low_mask(c.end[b]) & ~kernels::low_mask(b + 1);
    if (x & below) out &= ~bit(b);
  }
  return out;
}

std::uint64_t ancestor(const Shape& c, std::uint64_t x) {
  std::uint64_t out = 0;
  for (; x; x &= x - 1) out |= c.anc[low(x)];
  return out;
}

}  // namespace micro

namespace {

inline std::uint64_t bit(unsigned i) { return std::uint64_t{1} << i; }

// M seen through the interface the list procedures expect
struct MacroView {
  const MacroTree& mt;
  NodeId parent(NodeId i) const { return mt.parent(i); }
  bool ancestor_or_self(NodeId a, NodeId b) const { return mt.ancestor_or_self(a, b); }
  bool left_of(NodeId a, NodeId b) const { return mt.left_of(a, b); }
};

std::size_t next(const NodeArray& x, std::size_t from) {
  return kernels::active().next_nonzero(x.data(), x.size(), from);
}

}  // namespace

ClusteredIndex::ClusteredIndex(const LabeledTree& binary, std::uint32_t cluster_size)
    : ClusteredIndex(binary, cluster_partition(binary, lemma_parameter_for(binary.size(), cluster_size))) {}

ClusteredIndex::ClusteredIndex(const LabeledTree& binary, ClusterPartition cp) : mt_(binary, std::move(cp)) {
  NodeList lv = binary.leaves();
  leaves_ = from_list(lv);
}

void ClusteredIndex::set_memo(std::shared_ptr<micro::Memo> memo) {
  memo_ = std::move(memo);
  if (memo_ && shape_codes_.empty()) {
    shape_codes_.reserve(mt_.num_clusters());
    for (std::uint32_t k = 0; k < mt_.num_clusters(); ++k) shape_codes_.push_back(mt_.shape_code(k));
  }
}

std::uint64_t ClusteredIndex::m_deep(std::uint32_t k, std::uint64_t x) const {
  if (!memo_) return micro::deep(shape(k), x);
  return memo_->get(shape_codes_[k], micro::Op::Deep, x, 0, 0, [&] {
    return micro::Memo::Result{micro::deep(shape(k), x), 0};
  }).first;
}

std::uint64_t ClusteredIndex::m_parent(std::uint32_t k, std::uint64_t x) const {
  if (!memo_) return micro::parent(shape(k), x);
  return memo_->get(shape_codes_[k], micro::Op::Parent, x, 0, 0, [&] {
    return micro::Memo::Result{micro::parent(shape(k), x), 0};
  }).first;
}

std::uint64_t ClusteredIndex::m_nca(std::uint32_t k, std::uint64_t x, std::uint64_t y) const {
  if (!memo_) return micro::nca(shape(k), x, y);
  return memo_->get(shape_codes_[k], micro::Op::Nca, x, y, 0, [&] {
    return micro::Memo::Result{micro::nca(shape(k), x, y), 0};
  }).first;
}

std::pair<std::uint64_t, std::uint64_t> ClusteredIndex::m_mop(std::uint32_t k, std::uint64_t x,
                                                              std::uint64_t y) const {
  if (!memo_) return micro::mop(shape(k), x, y);
  return memo_->get(shape_codes_[k], micro::Op::Mop, x, y, 0, [&] { return micro::mop(shape(k), x, y); });
}

std::uint64_t ClusteredIndex::m_fl(std::uint32_t k, std::uint64_t x, std::uint64_t eq) const {
  // eq depends on the labels, so fl is never memoized; the shape-only parts are
  if (!memo_) return micro::fl(shape(k), x, eq);
  auto anc = memo_->get(shape_codes_[k], micro::Op::Ancestor, x, 0, 0, [&] {
    return micro::Memo::Result{micro::ancestor(shape(k), x), 0};
  }).first;
  return m_deep(k, anc & eq);
}

NodeArray ClusteredIndex::from_list(const NodeList& x) const {
  NodeArray r = empty();
  for (NodeId v : x) {
    std::uint32_t i = mt_.c(v);
    if (mt_.kind(i) == MacroKind::Boundary) r[i] |= 1;
    else r[i] |= bit(mt_.local_in(mt_.node(i).cluster, v));
  }
  return r;
}

NodeList ClusteredIndex::to_list(const NodeArray& x) const {
  NodeList out;
  for (std::size_t i = next(x, 0); i < x.size(); i = next(x, i + 1)) {
    const auto& m = mt_.node(static_cast<std::uint32_t>(i));
    if (m.kind == MacroKind::Boundary) {
      out.push_back(m.node);
      continue;
    }
    for (std::uint64_t w = x[i]; w; w &= w - 1)
      out.push_back(mt_.member(m.cluster, static_cast<std::uint32_t>(std::countr_zero(w))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairArray ClusteredIndex::from_pairs(const NodePairList& p) const {
  return {from_list(firsts(p)), from_list(seconds(p))};
}

NodePairList ClusteredIndex::to_pairs(const PairArray& p) const {
  NodeList a = to_list(p.first), b = to_list(p.second);
  if (a.size() != b.size()) throw std::logic_error("to_pairs: components differ in size");
  NodePairList out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = {a[i], b[i]};
  return out;
}

NodeArray ClusteredIndex::leaves() const { return leaves_; }

std::size_t ClusteredIndex::count(const NodeArray& x) const {
  return kernels::active().popcount(x.data(), x.size());
}

bool ClusteredIndex::is_empty(const NodeArray& x) const { return next(x, 0) == x.size(); }

bool ClusteredIndex::well_formed(const NodeArray& x) const {
  if (x.size() != mt_.size()) return false;
  for (std::uint32_t i = 0; i < x.size(); ++i)
    if (x[i] & ~own_mask(i)) return false;
  return true;
}

std::uint64_t ClusteredIndex::boundary_word(std::uint32_t k, const NodeArray& x) const {
  const auto& cm = mt_.macros(k);
  std::uint64_t w = x[cm.top] & 1;
  if (cm.bottom != kNoMacro && (x[cm.bottom] & 1)) w |= bit(mt_.partition().clusters[k].bottom_local);
  return w;
}

void ClusteredIndex::scatter(std::uint32_t k, std::uint64_t w, NodeArray& r) const {
  const auto& cm = mt_.macros(k);
  if (w & 1) r[cm.top] |= 1;
  if (cm.bottom != kNoMacro && ((w >> mt_.partition().clusters[k].bottom_local) & 1)) r[cm.bottom] |= 1;
  if (cm.leaf != kNoMacro) r[cm.leaf] |= w & cm.leaf_mask;
  if (cm.s != kNoMacro) {
    r[cm.s] |= w & cm.spine_mask;
    r[cm.l] |= w & cm.left_mask;
    r[cm.r] |= w & cm.right_mask;
  }
}

std::uint64_t ClusteredIndex::first_bits(std::uint32_t j) const {
  const auto& m = mt_.node(j);
  if (m.kind == MacroKind::Boundary) return 1;
  return bit(mt_.local_in(m.cluster, m.node));
}

NodeArray ClusteredIndex::parent(const NodeArray& x) const {
  NodeArray r = empty();
  const std::size_t n = x.size();
  for (std::size_t i = next(x, 0); i < n; i = next(x, i + 1)) {
    const auto& m = mt_.node(static_cast<std::uint32_t>(i));
    switch (m.kind) {
      case MacroKind::Left:
      case MacroKind::Right:
      case MacroKind::Leaf:
        // the parent stays inside the cluster: in i, on the spine or the top node
        scatter(m.cluster, m_parent(m.cluster, x[i]), r);
        break;
      case MacroKind::Spine:
        if (std::uint64_t p = m_parent(m.cluster, x[i]) & mt_.macros(m.cluster).spine_mask) {
          r[i] |= p;
          break;
        }
        [[fallthrough]];
      case MacroKind::Boundary:
        if (std::uint32_t j = mt_.parent(static_cast<std::uint32_t>(i)); j != kNoMacro) r[j] |= first_bits(j);
        break;
    }
  }
  return r;
}

NodeArray ClusteredIndex::nca(NodeArray x, NodeArray y) const {
  if (count(x) != count(y)) throw std::invalid_argument("nca: the two node arrays differ in size");
  NodeArray r = empty();
  const std::size_t n = x.size();
  std::size_t i = next(x, 0), j = next(y, 0);
  while (i < n && j < n) {
    const auto ui = static_cast<std::uint32_t>(i), uj = static_cast<std::uint32_t>(j);
    const unsigned c = std::min(micro::size(x[i]), micro::size(y[j]));
    const std::uint64_t xi = micro::left(c, x[i]), yj = micro::left(c, y[j]);
    if (i == j) {
      const auto& m = mt_.node(ui);
      if (m.kind == MacroKind::Boundary) r[i] |= 1;
      else scatter(m.cluster, m_nca(m.cluster, xi, yj), r);
    } else {
      const std::uint32_t h = mt_.nca(ui, uj);
      const auto& mh = mt_.node(h);
      if (mh.kind == MacroKind::Boundary) {
        r[h] = 1;
      } else if (mh.kind == MacroKind::Spine) {
        const std::uint32_t k = mh.cluster;
        const auto& cm = mt_.macros(k);
        const std::uint64_t wbit = bit(mt_.partition().clusters[k].bottom_local);
        std::uint64_t nn;
        if ((ui == cm.l || ui == cm.s) && (uj == cm.s || uj == cm.r))
          nn = m_nca(k, xi, yj);
        else if (ui == cm.l && mt_.ancestor_or_self(cm.bottom, uj))
          nn = m_nca(k, micro::right(1, xi), wbit);
        else if (uj == cm.r && mt_.ancestor_or_self(cm.bottom, ui))
          nn = m_nca(k, wbit, micro::left(1, yj));
        else
          throw std::logic_error("nca: pair is not left-to-right ordered");
        r[h] |= nn & cm.spine_mask;
        r[cm.top] |= nn & 1;
      } else {
        throw std::logic_error("nca: nca in M is neither a boundary nor a spine node");
      }
    }
    x[i] &= ~xi;
    y[j] &= ~yj;
    if (!x[i]) i = next(x, i + 1);
    if (!y[j]) j = next(y, j + 1);
  }
  return deep(std::move(r));
}

NodeArray ClusteredIndex::deep(NodeArray x) const {
  NodeArray r = empty();
  const std::size_t n = x.size();
  std::size_t j = next(x, 0);
  if (j >= n) return r;
  auto flush = [&](std::size_t at) {
    const auto& m = mt_.node(static_cast<std::uint32_t>(at));
    r[at] = m.kind == MacroKind::Boundary ? 1 : m_deep(m.cluster, x[at]);
  };
  for (std::size_t i = next(x, j + 1); i < n; i = next(x, i + 1)) {
    const auto uj = static_cast<std::uint32_t>(j), ui = static_cast<std::uint32_t>(i);
    if (mt_.left_of(uj, ui)) {
      flush(j);
    } else if (mt_.ancestor(uj, ui)) {
      // j's nodes are all ancestors of i's, except spine nodes beside a right node
      const auto& m = mt_.node(uj);
      if (m.kind == MacroKind::Spine && mt_.macros(m.cluster).r == ui)
        r[j] = x[j] & m_deep(m.cluster, x[i] | x[j]);
    } else {
      // i is the spine node above left node j
      const auto& m = mt_.node(uj);
      assert(m.kind == MacroKind::Left && mt_.macros(m.cluster).s == ui);
      const std::uint64_t nn = m_deep(m.cluster, x[i] | x[j]);
      r[j] = x[j] & nn;
      x[i] &= nn;
    }
    j = i;
  }
  flush(j);
  return r;
}

PairArray ClusteredIndex::mop_sim(NodeArray x, const NodeArray& y) const {
  PairArray out{empty(), empty()};
  const std::size_t n = x.size();
  // potential pair; index n stands for "none yet", which compares below every j
  std::size_t r1 = n, s1 = n;
  std::uint64_t r2 = 0, s2 = 0;
  auto flush = [&] {
    if (r1 < n) out.first[r1] |= r2;
    if (s1 < n) out.second[s1] |= s2;
  };
  auto before = [&](std::size_t j) { return s1 == n || s1 < j; };

  std::size_t i = 0, j = next(y, 0);
  while (true) {
    i = next(x, i);
    if (i >= n) break;
    const auto ui = static_cast<std::uint32_t>(i);
    const auto& mi = mt_.node(ui);
    const ClusterMacros* cm = mi.cluster == kNoMacro ? nullptr : &mt_.macros(mi.cluster);
    auto stop = [&](std::uint32_t uj) {
      if (mt_.left_of(ui, uj)) return true;
      switch (mi.kind) {
        case MacroKind::Left: return uj == ui || uj == cm->s;    // case I
        case MacroKind::Spine: return uj == cm->r;               // case II
        case MacroKind::Right:
        case MacroKind::Leaf: return uj == ui;                   // case III
        case MacroKind::Boundary: return false;                  // case IV
      }
      return false;
    };
    while (j < n && !stop(static_cast<std::uint32_t>(j))) j = next(y, j + 1);
    if (j >= n) break;
    const auto uj = static_cast<std::uint32_t>(j);

    if (mt_.left_of(ui, uj)) {
      if (before(j)) {
        flush();
        s1 = j;
        s2 = micro::left(1, y[j]);
      }
      r1 = i;
      r2 = micro::right(1, x[i]);
      ++i;
      continue;
    }

    const std::uint32_t k = mi.cluster;
    auto [r, s] = m_mop(k, x[i], y[j]);
    if (r) {
      if (before(j) || (s1 == j && micro::leftof(shape(k), x[i], s2) == 0)) flush();
      r1 = i, r2 = r, s1 = j, s2 = s;
    }
    if (mi.kind == MacroKind::Left && uj == ui) {
      // The spine still follows, and the rightmost left node may hang below a spine
      // node of y, so every candidate right of r has to stay.
      x[i] = micro::rightof(shape(k), x[i], r);
      j = next(y, j + 1);
    } else if (i == j || (mi.kind == MacroKind::Left && uj == cm->s)) {
      x[i] = micro::right(1, micro::rightof(shape(k), x[i], r));
      j = next(y, j + 1);
    } else if (!r) {
      j = next(y, j + 1);
    } else {
      i = j;
    }
  }
  flush();
  return out;
}

NodeArray ClusteredIndex::match(NodeArray x, NodeArray y, NodeArray yp) const {
  NodeArray r = empty();
  const std::size_t n = x.size();
  std::size_t i = next(x, 0), j = next(y, 0);
  while (i < n && j < n) {
    const unsigned cx = micro::size(x[i]), cy = micro::size(y[j]);
    bool adv_i = false, adv_j = false;
    if (y[j] == yp[j]) {
      if (cx == cy) {
        r[i] |= x[i];
        adv_i = adv_j = true;
      } else if (cx < cy) {
        r[i] |= x[i];
        y[j] = micro::right(cy - cx, y[j]);
        yp[j] = y[j];
        adv_i = true;
      } else {
        const std::uint64_t xl = micro::left(cy, x[i]);
        r[i] |= xl;
        x[i] &= ~xl;
        adv_j = true;
      }
    } else {
      if (cx == cy) {
        r[i] |= micro::match(x[i], y[j], yp[j]);
        adv_i = adv_j = true;
      } else if (cx < cy) {
        const std::uint64_t yl = micro::left(cx, y[j]), ylp = yp[j] & yl;
        r[i] |= micro::match(x[i], yl, ylp);
        y[j] &= ~yl;
        yp[j] &= ~ylp;
        adv_i = true;
      } else {
        const std::uint64_t xl = micro::left(cy, x[i]);
        r[i] |= micro::match(xl, y[j], yp[j]);
        x[i] &= ~xl;
        adv_j = true;
      }
    }
    if (adv_i) i = next(x, i + 1);
    if (adv_j) j = next(y, j + 1);
  }
  return r;
}

PairArray ClusteredIndex::mop_right(const PairArray& u, const NodeArray& z) const {
  PairArray m = mop_sim(u.second, z);
  return {match(u.first, u.second, m.first), std::move(m.second)};
}

PairArray ClusteredIndex::mop_left(const NodeArray& z, const PairArray& u) const {
  PairArray m = mop_sim(z, u.first);
  return {std::move(m.first), match(u.second, u.first, m.second)};
}

NodeArray ClusteredIndex::fl(const NodeArray& x, LabelId alpha) const {
  NodeArray r = empty();
  NodeList up;
  auto escalate = [&](std::uint32_t i) {
    if (std::uint32_t p = mt_.parent(i); p != kNoMacro) up.push_back(p);
  };
  const std::size_t n = x.size();
  for (std::size_t i = next(x, 0); i < n; i = next(x, i + 1)) {
    const auto ui = static_cast<std::uint32_t>(i);
    const auto& m = mt_.node(ui);
    if (m.kind == MacroKind::Boundary) {
      if (tree().label(m.node) == alpha) r[i] |= 1;
      else escalate(ui);
      continue;
    }
    const std::uint32_t k = m.cluster;
    const auto& cm = mt_.macros(k);
    const std::uint64_t eq = mt_.eq(k, alpha);
    if (m.kind == MacroKind::Spine) {
      if (std::uint64_t nn = m_fl(k, x[i], eq & cm.spine_mask)) r[i] |= nn;
      else escalate(ui);
      continue;
    }
    // left, right and leaf nodes reach the spine and the top node inside the cluster
    const std::uint64_t within = m.mask | cm.spine_mask | 1;
    if (std::uint64_t nn = m_fl(k, x[i], eq & within)) scatter(k, nn, r);
    else escalate(cm.top);
  }
  if (!up.empty()) {
    MacroView view{mt_};
    std::sort(up.begin(), up.end(), [&](NodeId a, NodeId b) { return mt_.pre(a) < mt_.pre(b); });
    up.erase(std::unique(up.begin(), up.end()), up.end());
    up = deep_with(view, up);
    NodeList hits = fl_bottom_up_with(view, up, [&](NodeId i) { return mt_.has_label(i, alpha); });
    for (NodeId j : hits) {
      const auto& m = mt_.node(j);
      if (m.kind == MacroKind::Boundary) r[j] |= 1;
      else r[j] |= m_fl(m.cluster, first_bits(j), mt_.eq(m.cluster, alpha) & mt_.macros(m.cluster).spine_mask);
    }
  }
  return deep(std::move(r));
}

}  // namespace treeincl
