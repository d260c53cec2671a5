#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treeincl {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr NodeId kNone = 0xFFFFFFFFu;
// Label of the grouping nodes introduced by binarize(); never handed out by Alphabet.
inline constexpr LabelId kBeta = 0xFFFFFFFEu;

class Alphabet {
 public:
  LabelId intern(std::string_view name);
  std::optional<LabelId> find(std::string_view name) const;
  const std::string& name(LabelId id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> ids_;
};

enum class Relation { Equal, Ancestor, Descendant, Left, Right };

const char* to_string(Relation r);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class TreeBuilder;

// Immutable ordered labeled tree. Node ids are preorder numbers, so the root is 0
// and the subtree of v occupies the id range [v, v + subtree_size(v)).
class LabeledTree {
 public:
  LabeledTree() = default;

  std::size_t size() const { return parent_.size(); }
  bool empty() const { return parent_.empty(); }
  NodeId root() const { return 0; }

  NodeId parent(NodeId v) const { return parent_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_ids_.data() + child_begin_[v], child_ids_.data() + child_begin_[v + 1]};
  }
  std::size_t num_children(NodeId v) const { return child_begin_[v + 1] - child_begin_[v]; }
  LabelId label(NodeId v) const { return label_[v]; }
  std::uint32_t pre(NodeId v) const { return v; }
  std::uint32_t post(NodeId v) const { return post_[v]; }
  std::uint32_t subtree_size(NodeId v) const { return size_[v]; }
  std::uint32_t leaf_count(NodeId v) const { return leaves_[v]; }
  std::uint32_t depth(NodeId v) const { return depth_[v]; }
  bool is_leaf(NodeId v) const { return child_begin_[v] == child_begin_[v + 1]; }

  std::size_t num_leaves() const { return empty() ? 0 : leaves_[0]; }
  std::uint32_t height() const;
  std::vector<NodeId> leaves() const;

  // u is a proper ancestor of v
  bool is_ancestor(NodeId u, NodeId v) const { return u < v && v < u + size_[u]; }
  bool is_ancestor_or_self(NodeId u, NodeId v) const { return u <= v && v < u + size_[u]; }
  // u ◁ v
  bool left_of(NodeId u, NodeId v) const { return v >= u + size_[u]; }
  // u ⊴ v: left of, or related by ancestry in either direction
  bool left_or_related(NodeId u, NodeId v) const { return !left_of(v, u); }

  Relation relation(NodeId u, NodeId v) const;

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<Alphabet>& alphabet_ptr() const { return alphabet_; }

 private:
  friend class TreeBuilder;

  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> child_begin_;
  std::vector<NodeId> child_ids_;
  std::vector<LabelId> label_;
  std::vector<std::uint32_t> post_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> leaves_;
  std::vector<std::uint32_t> depth_;
  std::shared_ptr<Alphabet> alphabet_;
};

// Nodes may be added in any order as long as a parent exists before its children.
// build() renumbers them into preorder.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::shared_ptr<Alphabet> alphabet = nullptr);

  NodeId add_root(LabelId label);
  NodeId add_child(NodeId parent, LabelId label);
  NodeId add_root(std::string_view label) { return add_root(alphabet_->intern(label)); }
  NodeId add_child(NodeId parent, std::string_view label) {
    return add_child(parent, alphabet_->intern(label));
  }
  std::size_t size() const { return label_.size(); }
  Alphabet& alphabet() { return *alphabet_; }

  // old_to_new, when given, receives the preorder id of each builder id.
  LabeledTree build(std::vector<NodeId>* old_to_new = nullptr) const;

 private:
  std::shared_ptr<Alphabet> alphabet_;
  std::vector<NodeId> parent_;
  std::vector<LabelId> label_;
  std::vector<std::vector<NodeId>> kids_;
};

LabeledTree parse_parens(std::string_view text, std::shared_ptr<Alphabet> alphabet = nullptr);
std::string to_parens(const LabeledTree& t);

struct XmlOptions {
  bool text_nodes = false;  // each non-blank text run becomes a leaf labeled by its trimmed content
};
LabeledTree parse_xml(std::string_view text, std::shared_ptr<Alphabet> alphabet = nullptr,
                      XmlOptions options = {});
std::string to_xml(const LabeledTree& t);

struct Binarized {
  LabeledTree tree;
  std::vector<NodeId> to_binary;    // g: T id -> B id
  std::vector<NodeId> from_binary;  // B id -> T id, kNone for β nodes
};

Binarized binarize(const LabeledTree& t);

bool same_shape_and_labels(const LabeledTree& a, const LabeledTree& b);

}  // namespace treeincl
