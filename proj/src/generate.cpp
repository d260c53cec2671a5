#include "treeincl/generate.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace treeincl::gen {

std::uint64_t below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  // rejection keeps the draw exactly uniform
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

bool parse_family(std::string_view name, Family& out) {
  if (name == "random") out = Family::Random;
  else if (name == "manyleaf") out = Family::ManyLeaf;
  else if (name == "chain") out = Family::Chain;
  else return false;
  return true;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Random: return "random";
    case Family::ManyLeaf: return "manyleaf";
    case Family::Chain: return "chain";
  }
  return "?";
}

namespace {

std::vector<LabelId> label_ids(Alphabet& a, std::size_t k) {
  std::vector<LabelId> ids(k);
  for (std::size_t i = 0; i < k; ++i) ids[i] = a.intern("l" + std::to_string(i));
  return ids;
}

void check_args(std::size_t n, std::size_t alphabet) {
  if (n < 1) throw std::invalid_argument("tree needs at least one node");
  if (alphabet < 1) throw std::invalid_argument("alphabet needs at least one symbol");
}

}  // namespace

LabeledTree random_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::size_t max_children,
                        std::shared_ptr<Alphabet> a) {
  check_args(n, alphabet);
  if (max_children < 1) throw std::invalid_argument("max_children must be positive");
  TreeBuilder b(std::move(a));
  const auto ids = label_ids(b.alphabet(), alphabet);
  std::vector<NodeId> open;
  std::vector<std::uint32_t> kids;
  open.push_back(b.add_root(ids[below(rng, alphabet)]));
  kids.push_back(0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t slot = below(rng, open.size());
    NodeId par = open[slot];
    NodeId c = b.add_child(par, ids[below(rng, alphabet)]);
    if (++kids[par] == max_children) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(c);
    kids.push_back(0);
  }
  return b.build();
}

LabeledTree manyleaf_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a) {
  check_args(n, alphabet);
  TreeBuilder b(std::move(a));
  const auto ids = label_ids(b.alphabet(), alphabet);
  const std::size_t skeleton = std::max<std::size_t>(1, n / 4);
  std::vector<NodeId> nodes{b.add_root(ids[below(rng, alphabet)])};
  for (std::size_t i = 1; i < skeleton; ++i)
    nodes.push_back(b.add_child(nodes[below(rng, nodes.size())], ids[below(rng, alphabet)]));
  for (std::size_t i = 0; b.size() < n; i = (i + 1) % skeleton)
    b.add_child(nodes[i], ids[below(rng, alphabet)]);
  return b.build();
}

LabeledTree chain_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a) {
  check_args(n, alphabet);
  TreeBuilder b(std::move(a));
  const auto ids = label_ids(b.alphabet(), alphabet);
  NodeId v = b.add_root(ids[below(rng, alphabet)]);
  for (std::size_t i = 1; i < n; ++i) v = b.add_child(v, ids[below(rng, alphabet)]);
  return b.build();
}

LabeledTree family_tree(Family f, std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a) {
  switch (f) {
    case Family::Random: return random_tree(n, alphabet, rng, 4, std::move(a));
    case Family::ManyLeaf: return manyleaf_tree(n, alphabet, rng, std::move(a));
    case Family::Chain: return chain_tree(n, alphabet, rng, std::move(a));
  }
  throw std::invalid_argument("unknown family");
}

LabeledTree random_binary_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a) {
  check_args(n, alphabet);
  TreeBuilder b(std::move(a));
  const auto ids = label_ids(b.alphabet(), alphabet);
  std::vector<NodeId> open{b.add_root(ids[below(rng, alphabet)])};
  std::vector<std::uint32_t> kids{0};
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t slot = below(rng, open.size());
    NodeId par = open[slot];
    NodeId c = b.add_child(par, ids[below(rng, alphabet)]);
    if (++kids[par] == 2) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(c);
    kids.push_back(0);
  }
  return b.build();
}

namespace {

// Preorder depth sequences: node i > 0 sits at depth 1..depth(i-1)+1 and hangs off the
// current path node one level up.
void shapes(std::size_t n, std::size_t max_children, std::vector<std::vector<NodeId>>& out) {
  if (n == 0) return;
  std::vector<NodeId> parent{kNone};
  std::vector<NodeId> path{0};
  std::vector<std::uint32_t> kids{0};
  std::function<void()> grow = [&] {
    if (parent.size() == n) {
      out.push_back(parent);
      return;
    }
    const std::size_t max_depth = path.size();
    for (std::size_t d = 1; d <= max_depth; ++d) {
      NodeId par = path[d - 1];
      if (kids[par] >= max_children) continue;
      auto saved = path;
      auto id = static_cast<NodeId>(parent.size());
      parent.push_back(par);
      kids.push_back(0);
      ++kids[par];
      path.resize(d);
      path.push_back(id);
      grow();
      path = std::move(saved);
      --kids[par];
      kids.pop_back();
      parent.pop_back();
    }
  };
  grow();
}

}  // namespace

std::vector<std::vector<NodeId>> all_shapes(std::size_t n) {
  std::vector<std::vector<NodeId>> out;
  shapes(n, n, out);
  return out;
}

std::vector<std::vector<NodeId>> all_binary_shapes(std::size_t n) {
  std::vector<std::vector<NodeId>> out;
  shapes(n, 2, out);
  return out;
}

LabeledTree sample_pattern(const LabeledTree& t, std::size_t m, Rng& rng) {
  if (t.empty() || m < 1) throw std::invalid_argument("sample_pattern: need a non-empty tree and m >= 1");
  m = std::min(m, t.size());
  // partial Fisher-Yates over the non-root nodes
  std::vector<NodeId> pool(t.size() - 1);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<NodeId>(i + 1);
  std::vector<char> keep(t.size(), 0);
  keep[0] = 1;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::size_t j = i + below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    keep[pool[i]] = 1;
  }
  TreeBuilder b(t.alphabet_ptr());
  std::vector<NodeId> image(t.size(), kNone);
  image[0] = b.add_root(t.label(0));
  for (NodeId v = 1; v < t.size(); ++v) {
    NodeId up = t.parent(v);
    const NodeId anchor = image[up];  // a deleted node maps to its nearest kept ancestor
    if (keep[v]) image[v] = b.add_child(anchor, t.label(v));
    else image[v] = anchor;
  }
  return b.build();
}

LabeledTree from_shape(const std::vector<NodeId>& parent, const std::vector<std::uint32_t>& labels,
                       std::shared_ptr<Alphabet> a) {
  TreeBuilder b(std::move(a));
  for (std::size_t i = 0; i < parent.size(); ++i) {
    const auto lab = b.alphabet().intern("l" + std::to_string(labels.empty() ? 0 : labels[i]));
    if (parent[i] == kNone) b.add_root(lab);
    else b.add_child(parent[i], lab);
  }
  return b.build();
}

}  // namespace treeincl::gen
