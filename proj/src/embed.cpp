#include "treeincl/embed.hpp"

#include <algorithm>
#include <memory>

#include "treeincl/bitpack.hpp"
#include "treeincl/nca.hpp"

namespace treeincl {

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Simple: return "simple";
    case Engine::FirstLabel: return "firstlabel";
    case Engine::Clustered: return "clustered";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "simple") return Engine::Simple;
  if (name == "firstlabel") return Engine::FirstLabel;
  if (name == "clustered") return Engine::Clustered;
  return std::nullopt;
}

HeavyLeafDecomposition heavy_leaf_decompose(const LabeledTree& p) {
  HeavyLeafDecomposition d;
  d.heavy.assign(p.size(), kNone);
  d.ldepth.assign(p.size(), 0);
  for (NodeId v = 0; v < p.size(); ++v) {
    NodeId best = kNone;
    for (NodeId c : p.children(v))
      if (best == kNone || p.leaf_count(c) > p.leaf_count(best)) best = c;
    d.heavy[v] = best;
    // parents precede children in preorder, so ldepth(v) is final here
    for (NodeId c : p.children(v)) d.ldepth[c] = d.ldepth[v] + (c == best ? 0 : 1);
  }
  return d;
}

namespace {

// The set procedures on ordered node lists.
struct ListOps {
  using Set = NodeList;
  using Pairs = NodePairList;

  const LabeledTree& t;
  const FirstLabelIndex* ix;  // null: bottom-up fl
  std::size_t* z_touched;

  Set leaves() const { return t.leaves(); }
  Set fl(const Set& x, LabelId a) const {
    return ix ? fl_indexed(t, *ix, x, a) : fl_bottom_up(t, x, a, z_touched);
  }
  Set parent(const Set& x) const { return parent_list(t, x); }
  Set deep(const Set& x) const { return deep_with(TreeView{t}, x); }
  Set nca(const Pairs& u, const NcaIndex& ni) const { return nca_pairs(ni, u); }
  static Pairs identity(const Set& x) {
    Pairs u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = {x[i], x[i]};
    return u;
  }
  Pairs mop_right(const Pairs& u, const Set& z) const { return treeincl::mop_right(t, u, z); }
  Pairs mop_left(const Set& z, const Pairs& u) const { return treeincl::mop_left(t, z, u); }
  static std::size_t size(const Set& x) { return x.size(); }
  static std::size_t size(const Pairs& u) { return u.size(); }
  NodeList occurrences(const Set& x) const { return x; }
};

// The same procedures on node arrays over the binarized target.
struct ArrayOps {
  using Set = NodeArray;
  using Pairs = PairArray;

  const ClusteredIndex& ci;
  const Binarized& bin;

  Set leaves() const { return ci.leaves(); }
  Set fl(const Set& x, LabelId a) const { return ci.fl(x, a); }
  Set parent(const Set& x) const { return ci.parent(x); }
  Set deep(const Set& x) const { return ci.deep(x); }
  Set nca(const Pairs& u, const NcaIndex&) const { return ci.nca(u); }
  static Pairs identity(const Set& x) { return {x, x}; }
  Pairs mop_right(const Pairs& u, const Set& z) const { return ci.mop_right(u, z); }
  Pairs mop_left(const Set& z, const Pairs& u) const { return ci.mop_left(z, u); }
  std::size_t size(const Set& x) const { return ci.count(x); }
  std::size_t size(const Pairs& u) const { return ci.count(u.first); }
  NodeList occurrences(const Set& x) const {
    NodeList out;
    for (NodeId b : ci.to_list(x)) out.push_back(bin.from_binary[b]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

std::vector<LabelId> pattern_labels(const LabeledTree& p, const LabeledTree& t) {
  std::vector<LabelId> out(p.size());
  const bool shared = p.alphabet_ptr() == t.alphabet_ptr();
  for (NodeId v = 0; v < p.size(); ++v) {
    if (shared) {
      out[v] = p.label(v);
    } else {
      auto id = t.alphabet().find(p.alphabet().name(p.label(v)));
      out[v] = id ? *id : kNone;
    }
  }
  return out;
}

// Emb(root(P)) with an explicit stack; children are visited heavy child first, then
// to its right, then to its left.
template <class Ops>
NodeList run_emb(const LabeledTree& p, const std::vector<LabelId>& label, const Ops& ops,
                 const NcaIndex& ni, EmbStats& st) {
  using Set = typename Ops::Set;
  using Pairs = typename Ops::Pairs;
  const auto hl = heavy_leaf_decompose(p);

  struct Frame {
    NodeId v;
    int stage = 0;
    std::ptrdiff_t i = 0;  // child index being processed
    std::size_t heavy = 0;
    Pairs u{};
    std::size_t saved = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({p.root()});
  std::size_t saved_total = 0;
  Set ret{};

  auto finish = [&](Set r) -> bool {
    const NodeId v = stack.back().v;
    const std::size_t sz = ops.size(r);
    st.emb_size[v] = sz;
    st.max_emb = std::max(st.max_emb, sz);
    if (sz * p.leaf_count(v) > st.target_leaves) ++st.size_bound_violations;
    ret = std::move(r);
    stack.pop_back();
    return sz > 0;
  };
  auto descend = [&](Frame& f, std::size_t child_index, bool save) {
    if (save) {
      f.saved = ops.size(f.u);
      saved_total += f.saved;
      st.peak_saved = std::max(st.peak_saved, saved_total);
    }
    NodeId c = p.children(f.v)[child_index];
    stack.push_back({c});
  };
  auto restore = [&](Frame& f) {
    saved_total -= f.saved;
    f.saved = 0;
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const std::size_t k = p.num_children(f.v);
    const LabelId a = label[f.v];
    if (k == 0) {
      if (!finish(ops.fl(ops.leaves(), a))) return {};
      continue;
    }
    if (k == 1) {
      if (f.stage == 0) {
        f.stage = 1;
        descend(f, 0, false);
      } else if (!finish(ops.fl(ops.deep(ops.parent(ret)), a))) {
        return {};
      }
      continue;
    }
    switch (f.stage) {
      case 0: {
        auto ks = p.children(f.v);
        f.heavy = static_cast<std::size_t>(std::find(ks.begin(), ks.end(), hl.heavy[f.v]) - ks.begin());
        f.stage = 1;
        descend(f, f.heavy, false);
        break;
      }
      case 1:
        f.u = Ops::identity(ret);
        f.i = static_cast<std::ptrdiff_t>(f.heavy) + 1;
        f.stage = 2;
        break;
      case 2:
        if (f.i < static_cast<std::ptrdiff_t>(k)) {
          f.stage = 3;
          descend(f, static_cast<std::size_t>(f.i), true);
        } else {
          f.i = static_cast<std::ptrdiff_t>(f.heavy) - 1;
          f.stage = 4;
        }
        break;
      case 3:
        restore(f);
        f.u = ops.mop_right(f.u, ret);
        if (ops.size(f.u) == 0) return {};
        ++f.i;
        f.stage = 2;
        break;
      case 4:
        if (f.i >= 0) {
          f.stage = 5;
          descend(f, static_cast<std::size_t>(f.i), true);
        } else {
          f.stage = 6;
        }
        break;
      case 5:
        restore(f);
        f.u = ops.mop_left(ret, f.u);
        if (ops.size(f.u) == 0) return {};
        --f.i;
        f.stage = 4;
        break;
      case 6:
        if (!finish(ops.fl(ops.deep(ops.nca(f.u, ni)), a))) return {};
        break;
    }
  }
  return ops.occurrences(ret);
}

}  // namespace

EmbResult emb(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt) {
  EmbResult res;
  res.engine = engine;
  res.stats.emb_size.assign(p.size(), 0);
  res.stats.target_leaves = t.num_leaves();
  if (p.empty() || t.empty() || p.size() > t.size()) return res;
  const auto labels = pattern_labels(p, t);

  // A one-node target cannot be clustered; every engine answers it the same way.
  if (engine == Engine::Clustered && t.size() > 1) {
    Binarized bin = binarize(t);
    ClusteredIndex ci(bin.tree, opt.cluster_size);
    NcaIndex unused;
    res.occurrences = run_emb(p, labels, ArrayOps{ci, bin}, unused, res.stats);
    return res;
  }
  NcaIndex ni(t);
  std::unique_ptr<FirstLabelIndex> ix;
  if (engine == Engine::FirstLabel) ix = std::make_unique<FirstLabelIndex>(t, opt.fl_strategy);
  res.occurrences = run_emb(p, labels, ListOps{t, ix.get(), &res.stats.z_touched}, ni, res.stats);
  return res;
}

NodeList ancestors_of(const LabeledTree& t, const NodeList& occurrences) {
  std::vector<char> mark(t.size(), 0);
  for (NodeId v : occurrences)
    for (NodeId u = v; u != kNone && !mark[u]; u = t.parent(u)) mark[u] = 1;
  NodeList out;
  for (NodeId v = 0; v < t.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

NodeList all_inclusions(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt) {
  return ancestors_of(t, emb(p, t, engine, opt).occurrences);
}

bool included(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt) {
  return !emb(p, t, engine, opt).occurrences.empty();
}

}  // namespace treeincl
