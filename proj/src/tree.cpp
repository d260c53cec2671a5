#include "treeincl/tree.hpp"

#include <algorithm>
#include <cctype>

namespace treeincl {

LabelId Alphabet::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<LabelId>(names_.size());
  if (id >= kBeta) throw std::length_error("alphabet exhausted");
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<LabelId> Alphabet::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Alphabet::name(LabelId id) const {
  static const std::string beta = "\xce\xb2";  // "β"
  if (id == kBeta) return beta;
  return names_.at(id);
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "EQUAL";
    case Relation::Ancestor: return "ANCESTOR";
    case Relation::Descendant: return "DESCENDANT";
    case Relation::Left: return "LEFT";
    case Relation::Right: return "RIGHT";
  }
  return "?";
}

Relation LabeledTree::relation(NodeId u, NodeId v) const {
  if (u >= size() || v >= size()) throw std::out_of_range("relation: invalid node id");
  if (u == v) return Relation::Equal;
  if (is_ancestor(u, v)) return Relation::Ancestor;
  if (is_ancestor(v, u)) return Relation::Descendant;
  return u < v ? Relation::Left : Relation::Right;
}

std::uint32_t LabeledTree::height() const {
  std::uint32_t h = 0;
  for (auto d : depth_) h = std::max(h, d);
  return h;
}

std::vector<NodeId> LabeledTree::leaves() const {
  std::vector<NodeId> out;
  out.reserve(num_leaves());
  for (NodeId v = 0; v < size(); ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

TreeBuilder::TreeBuilder(std::shared_ptr<Alphabet> alphabet)
    : alphabet_(alphabet ? std::move(alphabet) : std::make_shared<Alphabet>()) {}

NodeId TreeBuilder::add_root(LabelId label) {
  if (!label_.empty()) throw std::logic_error("tree already has a root");
  parent_.push_back(kNone);
  label_.push_back(label);
  kids_.emplace_back();
  return 0;
}

NodeId TreeBuilder::add_child(NodeId parent, LabelId label) {
  if (parent >= label_.size()) throw std::out_of_range("add_child: unknown parent");
  auto id = static_cast<NodeId>(label_.size());
  parent_.push_back(parent);
  label_.push_back(label);
  kids_.emplace_back();
  kids_[parent].push_back(id);
  return id;
}

LabeledTree TreeBuilder::build(std::vector<NodeId>* old_to_new) const {
  const std::size_t n = label_.size();
  LabeledTree t;
  t.alphabet_ = alphabet_;
  if (n == 0) {
    t.child_begin_.push_back(0);
    return t;
  }

  // Iterative preorder so deep chains do not blow the stack.
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ks = kids_[v];
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) stack.push_back(*it);
  }
  std::vector<NodeId> remap(n);
  for (std::size_t i = 0; i < n; ++i) remap[order[i]] = static_cast<NodeId>(i);

  t.parent_.resize(n);
  t.label_.resize(n);
  t.child_begin_.assign(n + 1, 0);
  t.child_ids_.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    NodeId old = order[i];
    t.parent_[i] = parent_[old] == kNone ? kNone : remap[parent_[old]];
    t.label_[i] = label_[old];
    t.child_begin_[i] = static_cast<std::uint32_t>(t.child_ids_.size());
    for (NodeId k : kids_[old]) t.child_ids_.push_back(remap[k]);
  }
  t.child_begin_[n] = static_cast<std::uint32_t>(t.child_ids_.size());

  t.size_.assign(n, 1);
  t.leaves_.assign(n, 0);
  t.depth_.assign(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (t.child_begin_[i] == t.child_begin_[i + 1]) t.leaves_[i] = 1;
    if (NodeId p = t.parent_[i]; p != kNone) {
      t.size_[p] += t.size_[i];
      t.leaves_[p] += t.leaves_[i];
    }
  }
  for (std::size_t i = 1; i < n; ++i) t.depth_[i] = t.depth_[t.parent_[i]] + 1;

  // post(v) = pre(v) + size(v) - 1 - depth(v)
  t.post_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    t.post_[i] = static_cast<std::uint32_t>(i + t.size_[i] - 1 - t.depth_[i]);

  if (old_to_new) *old_to_new = std::move(remap);
  return t;
}

namespace {

bool is_label_char(char c) {
  return c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c));
}

}  // namespace

LabeledTree parse_parens(std::string_view text, std::shared_ptr<Alphabet> alphabet) {
  TreeBuilder b(std::move(alphabet));
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_label = [&]() -> std::string_view {
    std::size_t start = i;
    while (i < text.size() && is_label_char(text[i])) ++i;
    if (i == start) {
      if (i >= text.size()) throw ParseError("unexpected end of input, expected label", i);
      throw ParseError(std::string("expected label, found '") + text[i] + "'", i);
    }
    return text.substr(start, i - start);
  };

  skip_ws();
  if (i >= text.size()) throw ParseError("empty input", i);

  // open holds the nodes whose '(' has not been closed yet
  std::vector<NodeId> open;
  NodeId last = b.add_root(read_label());
  for (;;) {
    skip_ws();
    if (i >= text.size()) {
      if (!open.empty()) throw ParseError("unbalanced parentheses", i);
      break;
    }
    char c = text[i];
    if (c == '(') {
      ++i;
      open.push_back(last);
      skip_ws();
      last = b.add_child(open.back(), read_label());
    } else if (c == ')') {
      if (open.empty()) throw ParseError("unmatched ')'", i);
      ++i;
      last = open.back();
      open.pop_back();
    } else {
      if (open.empty()) throw ParseError("trailing input after tree", i);
      last = b.add_child(open.back(), read_label());
    }
  }
  return b.build();
}

std::string to_parens(const LabeledTree& t) {
  std::string out;
  if (t.empty()) return out;
  const Alphabet& a = t.alphabet();
  // In preorder, every node whose subtree ends closes its own ')' plus one per finished ancestor.
  std::vector<NodeId> open;
  for (NodeId v = 0; v < t.size(); ++v) {
    while (!open.empty() && !t.is_ancestor(open.back(), v)) {
      out += ')';
      open.pop_back();
    }
    if (v != 0) {
      if (t.parent(v) == v - 1) out += '(';
      else out += ' ';
    }
    out += a.name(t.label(v));
    if (!t.is_leaf(v)) open.push_back(v);
  }
  out.append(open.size(), ')');
  return out;
}

Binarized binarize(const LabeledTree& t) {
  Binarized r;
  TreeBuilder b(t.alphabet_ptr());
  if (t.empty()) {
    r.tree = b.build();
    return r;
  }
  std::vector<NodeId> tmp_of(t.size());
  std::vector<NodeId> origin;  // builder id -> T id
  tmp_of[0] = b.add_root(t.label(0));
  origin.push_back(0);
  for (NodeId v = 0; v < t.size(); ++v) {
    auto ks = t.children(v);
    NodeId attach = tmp_of[v];
    // right comb: keep the first child, hang the rest off a chain of β nodes
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::size_t remaining = ks.size() - i;
      if (remaining >= 2 && i > 0) {
        attach = b.add_child(attach, kBeta);
        origin.push_back(kNone);
      }
      tmp_of[ks[i]] = b.add_child(attach, t.label(ks[i]));
      origin.push_back(ks[i]);
    }
  }
  std::vector<NodeId> remap;
  r.tree = b.build(&remap);
  r.to_binary.resize(t.size());
  r.from_binary.assign(r.tree.size(), kNone);
  for (NodeId v = 0; v < t.size(); ++v) r.to_binary[v] = remap[tmp_of[v]];
  for (std::size_t k = 0; k < origin.size(); ++k) r.from_binary[remap[k]] = origin[k];
  return r;
}

bool same_shape_and_labels(const LabeledTree& a, const LabeledTree& b) {
  if (a.size() != b.size()) return false;
  for (NodeId v = 0; v < a.size(); ++v) {
    if (a.parent(v) != b.parent(v)) return false;
    if (a.alphabet().name(a.label(v)) != b.alphabet().name(b.label(v))) return false;
  }
  return true;
}

}  // namespace treeincl
