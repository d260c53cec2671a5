#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeincl/nca.hpp"
#include "treeincl/tree.hpp"

namespace treeincl {

enum class NodeKind : std::uint8_t { Boundary, Spine, Left, Right, LeafNode };
enum class MacroKind : std::uint8_t { Boundary, Spine, Left, Right, Leaf };

const char* to_string(NodeKind k);
const char* to_string(MacroKind k);

inline constexpr std::uint32_t kNoMacro = 0xFFFFFFFFu;
inline constexpr std::uint8_t kNoLocal = 0xFF;
inline constexpr std::size_t kMaxClusterSize = 64;

struct Cluster {
  bool internal = false;
  NodeId top = kNone;     // upper boundary node v
  NodeId bottom = kNone;  // lower boundary node w (internal clusters only)
  NodeId head = kNone;    // the child of v the cluster hangs from
  std::uint32_t begin = 0;  // offset of the cluster's nodes in ClusterPartition::members
  std::uint32_t size = 0;
  std::uint32_t bottom_local = kNoMacro;
  std::vector<NodeId> spine;  // top-down path strictly between v and w
};

struct ClusterPartition {
  std::uint32_t s = 0;
  std::uint32_t max_size = 0;  // ⌈n/s⌉
  std::vector<Cluster> clusters;
  // Nodes of every cluster in cluster-local preorder, cluster k at [begin, begin+size).
  // Local index 0 is always the top boundary node.
  std::vector<NodeId> members;
  std::vector<NodeKind> kind;           // per tree node
  std::vector<std::uint32_t> owner;     // per tree node; for boundary nodes the cluster below
                                        // which they are the bottom, kNoMacro for the root
  std::vector<std::uint32_t> local;     // per tree node: index inside `owner`
  std::vector<std::uint32_t> by_head;   // per tree node: cluster whose head it is, or kNoMacro

  NodeId member(std::uint32_t k, std::uint32_t i) const { return members[clusters[k].begin + i]; }
};

// Clusters of at most ⌈n/s⌉ nodes over a binary tree. Requires n > 1 and ⌈n/s⌉ >= 2.
ClusterPartition cluster_partition(const LabeledTree& t, std::uint32_t s);

// Lemma parameter that yields clusters of at most `cluster_size` nodes.
std::uint32_t lemma_parameter_for(std::size_t n, std::uint32_t cluster_size);

struct PartitionReport {
  bool ok = true;
  std::string problem;
  std::size_t good = 0;  // clusters with more than max_size/2 nodes
  std::size_t bad = 0;
};
PartitionReport check_partition(const LabeledTree& t, const ClusterPartition& cp);

// One line per cluster: "<id> <leaf|internal> <top> <bottom|-> <size>"
std::string dump_partition(const ClusterPartition& cp);

struct MacroNode {
  MacroKind kind = MacroKind::Boundary;
  std::uint32_t cluster = kNoMacro;  // owning cluster, kNoMacro for boundary nodes
  NodeId node = kNone;               // boundary: its tree node; spine: first(i)
  std::uint64_t mask = 0;            // members as cluster-local bits (boundary: bit 0)
};

// Per cluster: the macro numbers of its pieces.
struct ClusterMacros {
  std::uint32_t top = kNoMacro, bottom = kNoMacro;
  std::uint32_t s = kNoMacro, l = kNoMacro, r = kNoMacro;  // internal, non-empty spine
  std::uint32_t leaf = kNoMacro;                            // leaf clusters
  std::uint64_t spine_mask = 0, left_mask = 0, right_mask = 0, leaf_mask = 0;
};

// The macro tree together with the per-cluster micro data needed to evaluate
// relations inside a cluster. Macro nodes are indexed by macro tree number.
class MacroTree {
 public:
  MacroTree(const LabeledTree& t, ClusterPartition cp);

  const LabeledTree& tree() const { return *t_; }
  const ClusterPartition& partition() const { return cp_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t num_clusters() const { return cp_.clusters.size(); }

  const MacroNode& node(std::uint32_t i) const { return nodes_[i]; }
  MacroKind kind(std::uint32_t i) const { return nodes_[i].kind; }
  std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
  NodeId first(std::uint32_t i) const { return nodes_[i].node; }
  const ClusterMacros& macros(std::uint32_t k) const { return cm_[k]; }

  std::uint32_t c(NodeId u) const { return c_[u]; }
  std::uint32_t boundary_macro(NodeId u) const { return c_[u]; }

  // Relations between macro nodes in M.
  bool ancestor(std::uint32_t i, std::uint32_t j) const {
    return shape_.is_ancestor(pre_[i], pre_[j]);
  }
  bool ancestor_or_self(std::uint32_t i, std::uint32_t j) const {
    return shape_.is_ancestor_or_self(pre_[i], pre_[j]);
  }
  bool left_of(std::uint32_t i, std::uint32_t j) const { return shape_.left_of(pre_[i], pre_[j]); }
  std::uint32_t nca(std::uint32_t i, std::uint32_t j) const {
    return num_[shape_nca_.query(pre_[i], pre_[j])];
  }
  std::uint32_t pre(std::uint32_t i) const { return pre_[i]; }
  std::uint32_t from_pre(std::uint32_t p) const { return num_[p]; }

  // Micro data. Local indices are cluster-local preorder numbers.
  std::uint32_t cluster_size(std::uint32_t k) const { return cp_.clusters[k].size; }
  NodeId member(std::uint32_t k, std::uint32_t i) const { return cp_.member(k, i); }
  std::uint8_t local_parent(std::uint32_t k, std::uint32_t i) const {
    return lparent_[cp_.clusters[k].begin + i];
  }
  std::uint8_t local_end(std::uint32_t k, std::uint32_t i) const {
    return lend_[cp_.clusters[k].begin + i];
  }
  std::uint64_t local_anc(std::uint32_t k, std::uint32_t i) const {
    return lanc_[cp_.clusters[k].begin + i];
  }
  const std::uint64_t* local_anc_row(std::uint32_t k) const {
    return lanc_.data() + cp_.clusters[k].begin;
  }
  const std::uint8_t* local_end_row(std::uint32_t k) const {
    return lend_.data() + cp_.clusters[k].begin;
  }
  const std::uint8_t* local_parent_row(std::uint32_t k) const {
    return lparent_.data() + cp_.clusters[k].begin;
  }
  // Local index of tree node u inside cluster k (u must belong to k).
  std::uint8_t local_in(std::uint32_t k, NodeId u) const;

  // eq_C(α) over the whole cluster k
  std::uint64_t eq(std::uint32_t k, LabelId alpha) const;
  // α ∈ label(i)
  bool has_label(std::uint32_t i, LabelId alpha) const;

  // Balanced-parenthesis encoding of cluster k's shape ("1" = open), lowest bit first.
  std::pair<std::uint64_t, std::uint64_t> shape_code(std::uint32_t k) const;

 private:
  const LabeledTree* t_;
  ClusterPartition cp_;
  std::vector<MacroNode> nodes_;
  std::vector<std::uint32_t> parent_;
  std::vector<ClusterMacros> cm_;
  std::vector<std::uint32_t> c_;
  LabeledTree shape_;  // M itself, ids are M preorder numbers
  NcaIndex shape_nca_;
  std::vector<std::uint32_t> pre_;  // macro number -> preorder in M
  std::vector<std::uint32_t> num_;  // preorder in M -> macro number
  std::vector<std::uint8_t> lparent_, lend_;
  std::vector<std::uint64_t> lanc_;
  std::vector<std::uint32_t> eq_begin_;  // per cluster offset into eq_
  std::vector<std::pair<LabelId, std::uint64_t>> eq_;
};

// Tree relations answered through the case analysis over macro nodes and micro forests.
bool macro_ancestor(const MacroTree& mt, NodeId v, NodeId w);  // v ≺ w
bool macro_left_of(const MacroTree& mt, NodeId v, NodeId w);   // v ◁ w
NodeId macro_nca(const MacroTree& mt, NodeId v, NodeId w);

}  // namespace treeincl
