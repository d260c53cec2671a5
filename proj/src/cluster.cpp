#include "treeincl/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace treeincl {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Boundary: return "boundary";
    case NodeKind::Spine: return "spine";
    case NodeKind::Left: return "left";
    case NodeKind::Right: return "right";
    case NodeKind::LeafNode: return "leaf";
  }
  return "?";
}

const char* to_string(MacroKind k) {
  switch (k) {
    case MacroKind::Boundary: return "boundary";
    case MacroKind::Spine: return "s";
    case MacroKind::Left: return "l";
    case MacroKind::Right: return "r";
    case MacroKind::Leaf: return "leaf";
  }
  return "?";
}

std::uint32_t lemma_parameter_for(std::size_t n, std::uint32_t cluster_size) {
  if (cluster_size < 2) throw std::invalid_argument("cluster size must be at least 2");
  return static_cast<std::uint32_t>(std::max<std::size_t>(1, (n + cluster_size - 1) / cluster_size));
}

ClusterPartition cluster_partition(const LabeledTree& t, std::uint32_t s) {
  const std::size_t n = t.size();
  if (n < 2) throw std::invalid_argument("cluster_partition: tree needs at least two nodes");
  if (s == 0) throw std::invalid_argument("cluster_partition: s must be positive");
  const std::size_t c = (n + s - 1) / s;
  if (c < 2) throw std::invalid_argument("cluster_partition: s too large, clusters would be single nodes");
  for (NodeId v = 0; v < n; ++v)
    if (t.num_children(v) > 2) throw std::invalid_argument("cluster_partition: tree is not binary");

  ClusterPartition cp;
  cp.s = s;
  cp.max_size = static_cast<std::uint32_t>(c);
  cp.kind.assign(n, NodeKind::Boundary);
  cp.owner.assign(n, kNoMacro);
  cp.local.assign(n, 0);
  cp.by_head.assign(n, kNoMacro);
  cp.members.reserve(n + n / 2);

  std::vector<NodeId> work{t.root()};
  std::vector<NodeId> dfs;
  while (!work.empty()) {
    NodeId v = work.back();
    work.pop_back();
    for (NodeId u : t.children(v)) {
      const auto k = static_cast<std::uint32_t>(cp.clusters.size());
      Cluster cl;
      cl.top = v;
      cl.head = u;
      cl.begin = static_cast<std::uint32_t>(cp.members.size());
      cp.by_head[u] = k;
      cp.members.push_back(v);
      const std::uint32_t su = t.subtree_size(u);
      if (su + 1 <= c) {
        for (NodeId x = u; x < u + su; ++x) {
          cp.kind[x] = NodeKind::LeafNode;
          cp.owner[x] = k;
          cp.local[x] = static_cast<std::uint32_t>(cp.members.size() - cl.begin);
          cp.members.push_back(x);
        }
      } else {
        // deepest w in T(u) with |T(u)| + 2 - |T(w)| <= c, leftmost on ties
        const std::size_t need = su + 2 - c;
        NodeId w = u;
        dfs.assign(1, u);
        while (!dfs.empty()) {
          NodeId x = dfs.back();
          dfs.pop_back();
          if (t.depth(x) > t.depth(w)) w = x;
          auto ks = t.children(x);
          for (auto it = ks.rbegin(); it != ks.rend(); ++it)
            if (t.subtree_size(*it) >= need) dfs.push_back(*it);
        }
        cl.internal = true;
        cl.bottom = w;
        for (NodeId x = u; x < u + su;) {
          auto li = static_cast<std::uint32_t>(cp.members.size() - cl.begin);
          cp.members.push_back(x);
          cp.owner[x] = k;
          cp.local[x] = li;
          if (x == w) {
            cl.bottom_local = li;
            x += t.subtree_size(w);
          } else {
            cp.kind[x] = x < w ? NodeKind::Left : NodeKind::Right;
            ++x;
          }
        }
        for (NodeId x = t.parent(w); x != v; x = t.parent(x)) {
          cl.spine.push_back(x);
          cp.kind[x] = NodeKind::Spine;
        }
        std::reverse(cl.spine.begin(), cl.spine.end());
        work.push_back(w);
      }
      cl.size = static_cast<std::uint32_t>(cp.members.size() - cl.begin);
      cp.clusters.push_back(std::move(cl));
    }
  }
  return cp;
}

PartitionReport check_partition(const LabeledTree& t, const ClusterPartition& cp) {
  PartitionReport rep;
  auto fail = [&](const std::string& why) {
    if (rep.ok) rep.problem = why;
    rep.ok = false;
  };
  const std::size_t n = t.size();
  // every edge (parent(x), x) must be covered by exactly one cluster
  std::vector<std::uint32_t> edge_owner(n, kNoMacro);
  std::vector<char> boundary(n, 0);
  boundary[t.root()] = 1;
  std::vector<std::uint32_t> mark(n, kNoMacro);
  for (std::uint32_t k = 0; k < cp.clusters.size(); ++k) {
    const auto& cl = cp.clusters[k];
    if (cl.size > cp.max_size) fail("cluster " + std::to_string(k) + " exceeds the size bound");
    if (cl.size < 2) fail("cluster " + std::to_string(k) + " has no edge");
    if (cp.member(k, 0) != cl.top) fail("cluster " + std::to_string(k) + " does not start at its top");
    for (std::uint32_t i = 0; i < cl.size; ++i) {
      NodeId x = cp.member(k, i);
      if (i > 0 && x <= cp.member(k, i - 1)) fail("cluster members out of preorder");
      mark[x] = k;
      if (i == 0) continue;
      if (mark[t.parent(x)] != k) fail("cluster " + std::to_string(k) + " is not connected");
      if (edge_owner[x] != kNoMacro) fail("edge into node " + std::to_string(x) + " covered twice");
      edge_owner[x] = k;
    }
    boundary[cl.top] = 1;
    if (cl.internal) boundary[cl.bottom] = 1;
  }
  for (NodeId x = 1; x < n; ++x)
    if (edge_owner[x] == kNoMacro) fail("edge into node " + std::to_string(x) + " not covered");
  // A node belongs to several clusters only if it is a boundary node, and a
  // cluster contains at most its top and bottom as boundary nodes.
  for (std::uint32_t k = 0; k < cp.clusters.size(); ++k) {
    const auto& cl = cp.clusters[k];
    int b = 0;
    for (std::uint32_t i = 0; i < cl.size; ++i) b += boundary[cp.member(k, i)];
    if (b > 2) fail("cluster " + std::to_string(k) + " has more than two boundary nodes");
    if (cl.internal && !t.is_ancestor(cl.top, cl.bottom)) fail("bottom boundary not below top");
    for (std::size_t i = 0; i < cl.spine.size(); ++i) {
      NodeId expect_parent = i == 0 ? cl.top : cl.spine[i - 1];
      if (t.parent(cl.spine[i]) != expect_parent) fail("spine is not a path");
    }
    if (cl.internal && t.parent(cl.bottom) != (cl.spine.empty() ? cl.top : cl.spine.back()))
      fail("spine does not end above the bottom boundary");
    if (2 * std::size_t{cl.size} > cp.max_size) ++rep.good;
    else ++rep.bad;
  }
  if (cp.clusters.size() > 10 * std::size_t{cp.s}) fail("more than 10*s clusters");
  if (rep.bad > 4 * rep.good) fail("bad clusters exceed four times the good ones");
  return rep;
}

std::string dump_partition(const ClusterPartition& cp) {
  std::ostringstream os;
  for (std::size_t k = 0; k < cp.clusters.size(); ++k) {
    const auto& cl = cp.clusters[k];
    os << k << ' ' << (cl.internal ? "internal" : "leaf") << ' ' << cl.top << ' ';
    if (cl.internal) os << cl.bottom;
    else os << '-';
    os << ' ' << cl.size << '\n';
  }
  return os.str();
}

MacroTree::MacroTree(const LabeledTree& t, ClusterPartition cp) : t_(&t), cp_(std::move(cp)) {
  if (cp_.max_size > kMaxClusterSize)
    throw std::invalid_argument("MacroTree: clusters must fit in a 64-bit word");
  const std::size_t n = t.size();
  const std::size_t nc = cp_.clusters.size();

  // Build M in builder ids first; macro numbers are derived from M's preorder.
  TreeBuilder mb;
  std::vector<MacroNode> proto;
  std::vector<std::uint32_t> bid_of_boundary(n, kNoMacro);
  struct Pieces {
    std::uint32_t s = kNoMacro, l = kNoMacro, r = kNoMacro, leaf = kNoMacro;
  };
  std::vector<Pieces> pieces(nc);

  auto add = [&](std::uint32_t parent_bid, MacroNode m) {
    std::uint32_t id = parent_bid == kNoMacro ? mb.add_root(kBeta) : mb.add_child(parent_bid, kBeta);
    proto.push_back(m);
    return id;
  };

  auto bit = [](std::uint32_t i) { return std::uint64_t{1} << i; };
  cm_.assign(nc, {});
  for (std::uint32_t k = 0; k < nc; ++k) {
    const auto& cl = cp_.clusters[k];
    for (std::uint32_t i = 1; i < cl.size; ++i) {
      NodeId x = cp_.member(k, i);
      switch (cp_.kind[x]) {
        case NodeKind::Spine: cm_[k].spine_mask |= bit(i); break;
        case NodeKind::Left: cm_[k].left_mask |= bit(i); break;
        case NodeKind::Right: cm_[k].right_mask |= bit(i); break;
        case NodeKind::LeafNode: cm_[k].leaf_mask |= bit(i); break;
        case NodeKind::Boundary: break;
      }
    }
  }

  std::vector<NodeId> work{t.root()};
  bid_of_boundary[t.root()] = add(kNoMacro, {MacroKind::Boundary, kNoMacro, t.root(), 1});
  while (!work.empty()) {
    NodeId b = work.back();
    work.pop_back();
    std::uint32_t bb = bid_of_boundary[b];
    for (NodeId u : t.children(b)) {
      std::uint32_t k = cp_.by_head[u];
      const auto& cl = cp_.clusters[k];
      if (!cl.internal) {
        pieces[k].leaf = add(bb, {MacroKind::Leaf, k, kNone, cm_[k].leaf_mask});
        continue;
      }
      NodeId w = cl.bottom;
      if (cl.spine.empty()) {
        bid_of_boundary[w] = add(bb, {MacroKind::Boundary, kNoMacro, w, 1});
      } else {
        std::uint32_t sb = add(bb, {MacroKind::Spine, k, cl.spine.back(), cm_[k].spine_mask});
        pieces[k].s = sb;
        pieces[k].l = add(sb, {MacroKind::Left, k, kNone, cm_[k].left_mask});
        bid_of_boundary[w] = add(sb, {MacroKind::Boundary, kNoMacro, w, 1});
        pieces[k].r = add(sb, {MacroKind::Right, k, kNone, cm_[k].right_mask});
      }
      work.push_back(w);
    }
  }

  std::vector<NodeId> remap;
  shape_ = mb.build(&remap);
  const std::size_t m = proto.size();
  pre_.resize(m);
  num_.resize(m);
  nodes_.resize(m);
  parent_.assign(m, kNoMacro);
  std::vector<std::uint32_t> num_of_bid(m);
  for (std::uint32_t bid = 0; bid < m; ++bid) {
    std::uint32_t p = remap[bid];
    std::uint32_t num = p;
    if (proto[bid].kind == MacroKind::Spine) num = p + 1;
    else if (proto[bid].kind == MacroKind::Left) num = p - 1;
    num_of_bid[bid] = num;
    pre_[num] = p;
    num_[p] = num;
    nodes_[num] = proto[bid];
  }
  for (std::uint32_t num = 0; num < m; ++num) {
    NodeId pp = shape_.parent(pre_[num]);
    parent_[num] = pp == kNone ? kNoMacro : num_[pp];
  }
  shape_nca_ = NcaIndex(shape_);

  c_.assign(n, kNoMacro);
  for (NodeId x = 0; x < n; ++x)
    if (bid_of_boundary[x] != kNoMacro) c_[x] = num_of_bid[bid_of_boundary[x]];
  for (std::uint32_t k = 0; k < nc; ++k) {
    const auto& cl = cp_.clusters[k];
    auto& cm = cm_[k];
    cm.top = c_[cl.top];
    if (cl.internal) cm.bottom = c_[cl.bottom];
    if (pieces[k].s != kNoMacro) {
      cm.s = num_of_bid[pieces[k].s];
      cm.l = num_of_bid[pieces[k].l];
      cm.r = num_of_bid[pieces[k].r];
    }
    if (pieces[k].leaf != kNoMacro) cm.leaf = num_of_bid[pieces[k].leaf];
    for (std::uint32_t i = 1; i < cl.size; ++i) {
      NodeId x = cp_.member(k, i);
      switch (cp_.kind[x]) {
        case NodeKind::Spine: c_[x] = cm.s; break;
        case NodeKind::Left: c_[x] = cm.l; break;
        case NodeKind::Right: c_[x] = cm.r; break;
        case NodeKind::LeafNode: c_[x] = cm.leaf; break;
        case NodeKind::Boundary: break;
      }
    }
  }

  // cluster-local parent, subtree end and ancestor masks
  const std::size_t total = cp_.members.size();
  lparent_.assign(total, kNoLocal);
  lend_.assign(total, 0);
  lanc_.assign(total, 0);
  std::vector<std::uint8_t> pos(n, kNoLocal);
  eq_begin_.assign(nc + 1, 0);
  std::vector<std::pair<LabelId, std::uint64_t>> scratch;
  for (std::uint32_t k = 0; k < nc; ++k) {
    const auto& cl = cp_.clusters[k];
    const std::uint32_t b = cl.begin;
    for (std::uint32_t i = 0; i < cl.size; ++i) pos[cp_.members[b + i]] = static_cast<std::uint8_t>(i);
    lanc_[b] = 1;
    for (std::uint32_t i = 1; i < cl.size; ++i) {
      std::uint8_t p = pos[t.parent(cp_.members[b + i])];
      lparent_[b + i] = p;
      lanc_[b + i] = lanc_[b + p] | bit(i);
    }
    std::vector<std::uint8_t> sz(cl.size, 1);
    for (std::uint32_t i = cl.size; i-- > 1;) sz[lparent_[b + i]] += sz[i];
    for (std::uint32_t i = 0; i < cl.size; ++i) lend_[b + i] = static_cast<std::uint8_t>(i + sz[i]);
    for (std::uint32_t i = 0; i < cl.size; ++i) pos[cp_.members[b + i]] = kNoLocal;

    scratch.clear();
    for (std::uint32_t i = 0; i < cl.size; ++i) scratch.emplace_back(t.label(cp_.members[b + i]), bit(i));
    std::sort(scratch.begin(), scratch.end());
    eq_begin_[k] = static_cast<std::uint32_t>(eq_.size());
    for (const auto& [lab, m1] : scratch) {
      if (eq_.size() > eq_begin_[k] && eq_.back().first == lab) eq_.back().second |= m1;
      else eq_.emplace_back(lab, m1);
    }
  }
  eq_begin_[nc] = static_cast<std::uint32_t>(eq_.size());
}

std::uint8_t MacroTree::local_in(std::uint32_t k, NodeId u) const {
  const auto& cl = cp_.clusters[k];
  if (u == cl.top) return 0;
  if (u == cl.bottom) return static_cast<std::uint8_t>(cl.bottom_local);
  assert(cp_.owner[u] == k);
  return static_cast<std::uint8_t>(cp_.local[u]);
}

std::uint64_t MacroTree::eq(std::uint32_t k, LabelId alpha) const {
  auto first = eq_.begin() + eq_begin_[k], last = eq_.begin() + eq_begin_[k + 1];
  auto it = std::lower_bound(first, last, alpha, [](const auto& e, LabelId a) { return e.first < a; });
  return it != last && it->first == alpha ? it->second : 0;
}

bool MacroTree::has_label(std::uint32_t i, LabelId alpha) const {
  const auto& m = nodes_[i];
  if (m.kind == MacroKind::Boundary) return t_->label(m.node) == alpha;
  return (eq(m.cluster, alpha) & m.mask) != 0;
}

std::pair<std::uint64_t, std::uint64_t> MacroTree::shape_code(std::uint32_t k) const {
  std::uint64_t lo = 0, hi = 0;
  std::uint32_t at = 0;
  auto put = [&](bool open) {
    if (open) (at < 64 ? lo : hi) |= std::uint64_t{1} << (at & 63);
    ++at;
  };
  const auto n = cluster_size(k);
  std::vector<std::uint32_t> open;
  for (std::uint32_t i = 0; i < n; ++i) {
    while (!open.empty() && local_end(k, open.back()) <= i) {
      put(false);
      open.pop_back();
    }
    put(true);
    open.push_back(i);
  }
  while (!open.empty()) {
    put(false);
    open.pop_back();
  }
  return {lo, hi};
}

namespace {

struct Where {
  std::uint32_t macro;
  MacroKind kind;
  std::uint32_t cluster;  // kNoMacro for boundary nodes
};

Where locate(const MacroTree& mt, NodeId v) {
  std::uint32_t i = mt.c(v);
  return {i, mt.kind(i), mt.node(i).cluster};
}

bool is_lrs(MacroKind k) { return k == MacroKind::Left || k == MacroKind::Right || k == MacroKind::Spine; }

bool micro_ancestor(const MacroTree& mt, std::uint32_t k, NodeId v, NodeId w) {
  auto a = mt.local_in(k, v), b = mt.local_in(k, w);
  return a != b && ((mt.local_anc(k, b) >> a) & 1);
}

bool micro_left(const MacroTree& mt, std::uint32_t k, NodeId v, NodeId w) {
  return mt.local_in(k, w) >= mt.local_end(k, mt.local_in(k, v));
}

NodeId micro_nca(const MacroTree& mt, std::uint32_t k, NodeId v, NodeId w) {
  std::uint64_t common = mt.local_anc(k, mt.local_in(k, v)) & mt.local_anc(k, mt.local_in(k, w));
  return mt.member(k, 63 - std::countl_zero(common));
}

}  // namespace

bool macro_ancestor(const MacroTree& mt, NodeId v, NodeId w) {
  Where a = locate(mt, v), b = locate(mt, w);
  if (a.macro == b.macro) return a.kind != MacroKind::Boundary && micro_ancestor(mt, a.cluster, v, w);
  if (a.kind == MacroKind::Spine && (b.kind == MacroKind::Left || b.kind == MacroKind::Right) &&
      a.cluster == b.cluster)
    return micro_ancestor(mt, a.cluster, v, w);
  return mt.ancestor(a.macro, b.macro);
}

bool macro_left_of(const MacroTree& mt, NodeId v, NodeId w) {
  Where a = locate(mt, v), b = locate(mt, w);
  if (a.macro == b.macro) return a.kind != MacroKind::Boundary && micro_left(mt, a.cluster, v, w);
  if (a.cluster == b.cluster && a.cluster != kNoMacro &&
      ((a.kind == MacroKind::Left && b.kind == MacroKind::Spine) ||
       (a.kind == MacroKind::Spine && b.kind == MacroKind::Right)))
    return micro_left(mt, a.cluster, v, w);
  return mt.left_of(a.macro, b.macro);
}

NodeId macro_nca(const MacroTree& mt, NodeId v, NodeId w) {
  if (v == w) return v;
  Where a = locate(mt, v), b = locate(mt, w);
  if (a.macro == b.macro) return micro_nca(mt, a.cluster, v, w);  // cases (i)-(iii)
  if (is_lrs(a.kind) && is_lrs(b.kind) && a.cluster == b.cluster)
    return micro_nca(mt, a.cluster, v, w);  // case (iv)
  if (is_lrs(a.kind)) {
    std::uint32_t wb = mt.macros(a.cluster).bottom;
    if (mt.ancestor_or_self(wb, b.macro))  // case (v)
      return micro_nca(mt, a.cluster, v, mt.node(wb).node);
  }
  if (is_lrs(b.kind)) {
    std::uint32_t wb = mt.macros(b.cluster).bottom;
    if (mt.ancestor_or_self(wb, a.macro)) return micro_nca(mt, b.cluster, w, mt.node(wb).node);
  }
  std::uint32_t h = mt.nca(a.macro, b.macro);  // case (vi)
  if (mt.kind(h) != MacroKind::Boundary) throw std::logic_error("macro_nca: nca in M is not a boundary node");
  return mt.node(h).node;
}

}  // namespace treeincl
