#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "treeincl/cluster.hpp"

using namespace treeincl;
using namespace treeincl::testing;

TEST_CASE("lemma parameter") {
  CHECK(lemma_parameter_for(100, 10) == 10);
  CHECK(lemma_parameter_for(101, 10) == 11);
  CHECK(lemma_parameter_for(5, 64) == 1);
  CHECK_THROWS(lemma_parameter_for(10, 1));
}

TEST_CASE("partition invariants on random binary trees") {
  Rng rng(43);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + gen::below(rng, round < 150 ? 120 : 3000);
    const LabeledTree t = gen::random_binary_tree(n, 2, rng);
    for (std::uint32_t s : {1u, 2u, 3u, 5u, 16u}) {
      if ((n + s - 1) / s < 2) continue;
      const ClusterPartition cp = cluster_partition(t, s);
      const PartitionReport rep = check_partition(t, cp);
      INFO("n=", n, " s=", s, " ", rep.problem);
      CHECK(rep.ok);
      CHECK(cp.max_size == (n + s - 1) / s);
      // every node is either a boundary or owned by exactly one cluster
      for (NodeId v = 0; v < n; ++v) {
        if (cp.kind[v] == NodeKind::Boundary) continue;
        const std::uint32_t k = cp.owner[v];
        REQUIRE(k < cp.clusters.size());
        CHECK(cp.member(k, cp.local[v]) == v);
      }
    }
  }
}

TEST_CASE("chains and combs") {
  Rng rng(44);
  const LabeledTree chain = gen::chain_tree(500, 2, rng);
  for (std::uint32_t s : {2u, 7u, 50u}) CHECK(check_partition(chain, cluster_partition(chain, s)).ok);
  // right comb: every left child is a leaf
  std::string comb = "a";
  for (int i = 0; i < 200; ++i) comb = "a(b " + comb + ")";
  const LabeledTree ct = parse_parens(comb);
  for (std::uint32_t s : {2u, 9u, 40u}) CHECK(check_partition(ct, cluster_partition(ct, s)).ok);
}

TEST_CASE("rejects degenerate inputs") {
  CHECK_THROWS(cluster_partition(parse_parens("a"), 1));
  CHECK_THROWS(cluster_partition(parse_parens("a(b)"), 0));
}

TEST_CASE("dump lists one line per cluster") {
  const LabeledTree t = parse_parens("a(b(c d) e(f g))");
  const ClusterPartition cp = cluster_partition(t, 3);
  std::istringstream in(dump_partition(cp));
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == cp.clusters.size());
}

TEST_CASE("macro relations match the tree on every pair") {
  Rng rng(45);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 2 + gen::below(rng, 40);
    const LabeledTree t = gen::random_binary_tree(n, 2, rng);
    const std::uint32_t s = 1 + static_cast<std::uint32_t>(gen::below(rng, 6));
    if ((n + s - 1) / s < 2) continue;
    const MacroTree mt(t, cluster_partition(t, s));
    NcaIndex ni(t);
    for (NodeId v = 0; v < n; ++v)
      for (NodeId w = 0; w < n; ++w) {
        CAPTURE(v);
        CAPTURE(w);
        CHECK(macro_ancestor(mt, v, w) == t.is_ancestor(v, w));
        CHECK(macro_left_of(mt, v, w) == t.left_of(v, w));
        CHECK(macro_nca(mt, v, w) == ni.query(v, w));
      }
    // macro numbering: every macro node comes after its parent
    for (std::uint32_t i = 0; i < mt.size(); ++i)
      if (mt.parent(i) != kNoMacro) CHECK(mt.ancestor(mt.parent(i), i));
  }
}

TEST_CASE("label sets of macro nodes") {
  const LabeledTree t = parse_parens("a(b(c(d e) f) g(h i))");
  const MacroTree mt(t, cluster_partition(t, 3));
  for (std::uint32_t i = 0; i < mt.size(); ++i) {
    const MacroNode& m = mt.node(i);
    for (LabelId a = 0; a < t.alphabet().size(); ++a) {
      bool want = false;
      if (m.kind == MacroKind::Boundary) {
        want = t.label(m.node) == a;
      } else {
        for (std::uint64_t bits = m.mask; bits; bits &= bits - 1)
          want = want || t.label(mt.member(m.cluster, static_cast<std::uint32_t>(__builtin_ctzll(bits)))) == a;
      }
      CHECK(mt.has_label(i, a) == want);
    }
  }
}
