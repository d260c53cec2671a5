#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "treeincl/firstlabel.hpp"
#include "treeincl/node_list.hpp"
#include "treeincl/tree.hpp"

namespace treeincl {

enum class Engine { Simple, FirstLabel, Clustered };

const char* to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

struct HeavyLeafDecomposition {
  std::vector<NodeId> heavy;         // heavy child, kNone for leaves
  std::vector<std::uint32_t> ldepth; // light edges on the path from the root
};

HeavyLeafDecomposition heavy_leaf_decompose(const LabeledTree& p);

inline constexpr std::uint32_t kDefaultClusterSize = 64;

struct EmbOptions {
  std::uint32_t cluster_size = kDefaultClusterSize;  // CLUSTERED only
  FlStrategy fl_strategy = FlStrategy::Laminar;      // FIRSTLABEL only
};

struct EmbStats {
  std::vector<std::size_t> emb_size;  // |Emb(v)| per pattern node, 0 when never computed
  std::size_t max_emb = 0;
  std::size_t size_bound_violations = 0;  // nodes with |Emb(v)| * l_P(v) > l_T
  std::size_t peak_saved = 0;             // largest total of saved pair sets on the stack
  std::size_t z_touched = 0;              // SIMPLE only: Z cells visited by fl
  std::size_t target_leaves = 0;
};

struct EmbResult {
  Engine engine = Engine::Simple;
  NodeList occurrences;  // deep occurrences, preorder ids of the target
  EmbStats stats;
};

// Deep occurrences of p in t.
EmbResult emb(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt = {});

// Every u with p included in T(u): the occurrences and all of their ancestors, in preorder.
NodeList ancestors_of(const LabeledTree& t, const NodeList& occurrences);
NodeList all_inclusions(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt = {});
bool included(const LabeledTree& p, const LabeledTree& t, Engine engine, const EmbOptions& opt = {});

}  // namespace treeincl
