#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

using namespace treeincl;
using namespace treeincl::testing;

namespace {

// Structural invariants every built tree must satisfy.
void check_invariants(const LabeledTree& t) {
  REQUIRE(!t.empty());
  CHECK(t.parent(0) == kNone);
  std::vector<std::uint32_t> posts;
  for (NodeId v = 0; v < t.size(); ++v) {
    posts.push_back(t.post(v));
    if (v > 0) {
      CHECK(t.parent(v) < v);
      auto kids = t.children(t.parent(v));
      CHECK(std::count(kids.begin(), kids.end(), v) == 1);
    }
    std::uint32_t size = 1, leaves = 0;
    for (NodeId c : t.children(v)) {
      CHECK(t.parent(c) == v);
      CHECK(t.depth(c) == t.depth(v) + 1);
      size += t.subtree_size(c);
      leaves += t.leaf_count(c);
    }
    CHECK(t.subtree_size(v) == size);
    CHECK(t.leaf_count(v) == (t.is_leaf(v) ? 1u : leaves));
  }
  std::sort(posts.begin(), posts.end());
  std::vector<std::uint32_t> iota(t.size());
  std::iota(iota.begin(), iota.end(), 0u);
  CHECK(posts == iota);
  // postorder: a node comes after all its descendants
  for (NodeId v = 1; v < t.size(); ++v) CHECK(t.post(v) < t.post(t.parent(v)));
}

}  // namespace

TEST_CASE("parens round trip and structure") {
  const LabeledTree t = parse_parens("root(l(ll lc lr(lrc)) c(cl(cll clr) cr) r(rl(rlc) rr))");
  CHECK(t.size() == 15);
  CHECK(t.num_leaves() == 8);
  CHECK(t.alphabet().name(t.label(4)) == "lr");
  CHECK(to_parens(t) == "root(l(ll lc lr(lrc)) c(cl(cll clr) cr) r(rl(rlc) rr))");
  check_invariants(t);

  const LabeledTree spaced = parse_parens("  a ( b\n\tc( d ) )  ");
  CHECK(to_parens(spaced) == "a(b c(d))");
}

TEST_CASE("parse errors carry offsets") {
  for (const char* bad : {"", "a(", "a)", "a(b))", "(a)", "a b", "a()"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_parens(bad), ParseError);
  }
  try {
    parse_parens("a(b c");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
}

TEST_CASE("order predicates agree with relation()") {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const LabeledTree t = gen::random_tree(1 + gen::below(rng, 40), 3, rng);
    check_invariants(t);
    for (NodeId u = 0; u < t.size(); ++u) {
      for (NodeId v = 0; v < t.size(); ++v) {
        // ancestor by walking parents, left by preorder/postorder comparison
        bool anc = false;
        for (NodeId w = t.parent(v); w != kNone; w = t.parent(w)) anc = anc || w == u;
        const bool left = !anc && u != v && u < v && t.post(u) < t.post(v);
        CHECK(t.is_ancestor(u, v) == anc);
        CHECK(t.left_of(u, v) == left);
        CHECK(t.left_or_related(u, v) == !t.left_of(v, u));
        Relation r = t.relation(u, v);
        if (u == v) CHECK(r == Relation::Equal);
        else if (anc) CHECK(r == Relation::Ancestor);
        else if (t.is_ancestor(v, u)) CHECK(r == Relation::Descendant);
        else if (left) CHECK(r == Relation::Left);
        else CHECK(r == Relation::Right);
      }
    }
  }
}

TEST_CASE("builder renumbers into preorder") {
  TreeBuilder b;
  NodeId r = b.add_root("r");
  NodeId x = b.add_child(r, "x");
  NodeId y = b.add_child(r, "y");
  b.add_child(x, "x1");
  b.add_child(y, "y1");
  b.add_child(x, "x2");
  std::vector<NodeId> map;
  const LabeledTree t = b.build(&map);
  CHECK(to_parens(t) == "r(x(x1 x2) y(y1))");
  CHECK(map[y] == 4);
  CHECK_THROWS(b.add_root("again"));
  CHECK_THROWS(b.add_child(99, "z"));
}

TEST_CASE("shared alphabet gives equal ids for equal names") {
  auto a = std::make_shared<Alphabet>();
  const LabeledTree p = parse_parens("a(b)", a), t = parse_parens("b(a)", a);
  CHECK(p.label(0) == t.label(1));
  CHECK(p.label(1) == t.label(0));
  CHECK(a->size() == 2);
  CHECK(a->find("c") == std::nullopt);
  CHECK(a->name(*a->find("b")) == "b");
}

TEST_CASE("xml parsing and output") {
  CHECK(to_parens(parse_xml("<a><b/></a>")) == "a(b)");
  const char* doc = R"(<?xml version="1.0"?>
<!-- catalog -->
<catalog kind="x"><book><title>Trees &amp; more</title></book><book/></catalog>)";
  CHECK(to_parens(parse_xml(doc)) == "catalog(book(title) book)");
  XmlOptions text;
  text.text_nodes = true;
  CHECK(to_parens(parse_xml("<a><b> john </b></a>", nullptr, text)) == "a(b(john))");
  for (const char* bad : {"<a>", "<a></b>", "<a/><b/>", "text", "<a><b></a></b>"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_xml(bad), ParseError);
  }
  CHECK_THROWS_AS(to_xml(parse_parens("a(1b)")), std::invalid_argument);
}

TEST_CASE("random trees survive parens and xml round trips") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const LabeledTree t = gen::random_tree(1 + gen::below(rng, 60), 5, rng);
    CHECK(same_shape_and_labels(parse_parens(to_parens(t)), t));
    CHECK(same_shape_and_labels(parse_xml(to_xml(t)), t));
  }
}

TEST_CASE("binarization keeps ancestry and order of original nodes") {
  Rng rng(5);
  for (int round = 0; round < 60; ++round) {
    const LabeledTree t = gen::random_tree(1 + gen::below(rng, 50), 3, rng, 1 + gen::below(rng, 6));
    const Binarized b = binarize(t);
    const LabeledTree& bt = b.tree;
    CHECK(bt.size() <= 2 * t.size());
    std::size_t beta = 0;
    for (NodeId w = 0; w < bt.size(); ++w) {
      CHECK(bt.num_children(w) <= 2);
      if (b.from_binary[w] == kNone) {
        ++beta;
        CHECK(bt.label(w) == kBeta);
      } else {
        CHECK(b.to_binary[b.from_binary[w]] == w);
        CHECK(bt.label(w) == t.label(b.from_binary[w]));
      }
    }
    CHECK(bt.size() == t.size() + beta);
    CHECK(bt.num_leaves() == t.num_leaves());
    for (NodeId u = 0; u < t.size(); ++u)
      for (NodeId v = 0; v < t.size(); ++v) CHECK(t.relation(u, v) == bt.relation(b.to_binary[u], b.to_binary[v]));
  }
}
