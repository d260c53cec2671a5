#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

#include "treeincl/tree.hpp"

namespace treeincl::gen {

using Rng = std::mt19937_64;

// uniform in [0, n); independent of the standard library's distribution code so that
// generated trees are identical across toolchains
std::uint64_t below(Rng& rng, std::uint64_t n);

enum class Family { Random, ManyLeaf, Chain };
bool parse_family(std::string_view name, Family& out);
const char* to_string(Family f);

// Each new node hangs off a uniformly chosen earlier node that still has fewer than
// max_children children. Labels are uniform over "l0".."l{K-1}".
LabeledTree random_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::size_t max_children = 4,
                        std::shared_ptr<Alphabet> a = nullptr);
// About three quarters of the nodes are leaves: a random skeleton whose nodes each
// carry three leaf children.
LabeledTree manyleaf_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a = nullptr);
// A path of n nodes.
LabeledTree chain_tree(std::size_t n, std::size_t alphabet, Rng& rng, std::shared_ptr<Alphabet> a = nullptr);
LabeledTree family_tree(Family f, std::size_t n, std::size_t alphabet, Rng& rng,
                        std::shared_ptr<Alphabet> a = nullptr);

// Uniformly random binary tree shape (every node has 0, 1 or 2 children) with random labels.
LabeledTree random_binary_tree(std::size_t n, std::size_t alphabet, Rng& rng,
                               std::shared_ptr<Alphabet> a = nullptr);

// Every ordered tree shape with n nodes as parent arrays in preorder (parent[0] = kNone).
std::vector<std::vector<NodeId>> all_shapes(std::size_t n);
// Every binary tree shape with n nodes, where a single child is either left or right
// (the two are the same ordered tree, so each ordered shape appears once).
std::vector<std::vector<NodeId>> all_binary_shapes(std::size_t n);

// Keeps the root of t and m-1 further random nodes, deleting the rest (children of a
// deleted node move up to its parent), so the result is always included in t.
LabeledTree sample_pattern(const LabeledTree& t, std::size_t m, Rng& rng);

// Builds a tree from a preorder parent array with the given labels ("l<k>").
LabeledTree from_shape(const std::vector<NodeId>& parent, const std::vector<std::uint32_t>& labels,
                       std::shared_ptr<Alphabet> a = nullptr);

}  // namespace treeincl::gen
