// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset. Criteria marked soft are reported but do not change the
// exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crosscheck.hpp"
#include "support.hpp"
#include "treeincl/bitpack.hpp"
#include "treeincl/cluster.hpp"
#include "treeincl/embed.hpp"
#include "treeincl/kernels.hpp"
#include "treeincl/nca.hpp"
#include "treeincl/oracle.hpp"

using namespace treeincl;
using namespace treeincl::testing;

namespace {

// Pinned budgets and tolerances.
constexpr double kFixtureSeconds = 1.0;
constexpr double kExhaustiveSeconds = 300.0;
constexpr double kRandomSeconds = 300.0;
constexpr double kBenchSeconds = 600.0;
constexpr double kNcaMedianMicros = 1.0;  // soft
constexpr double kSlopeGap = 0.15;        // soft
constexpr std::size_t kPeakSavedFactor = 4;

// Criterion 2 sampling: label sequences are enumerated up to renaming of labels;
// above this many per shape pair a seeded sample of kLabelSamples is drawn instead.
constexpr std::size_t kLabelEnumCap = 2048;
constexpr std::size_t kLabelSamples = 64;

constexpr Engine kEngines[] = {Engine::Simple, Engine::FirstLabel, Engine::Clustered};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  bool soft = false;
  std::string detail;
};

// Counts from the embedding runs of criteria 2 and 3, checked by criterion 6.
struct BoundTally {
  std::size_t runs = 0;
  std::size_t emb_violations = 0;
  std::size_t peak_violations = 0;
  std::size_t worst_peak = 0;  // largest peak_saved / l_T ratio seen, times 1000
} g_bounds;

void note_bounds(const EmbResult& r, const LabeledTree& t) {
  ++g_bounds.runs;
  g_bounds.emb_violations += r.stats.size_bound_violations;
  if (r.engine != Engine::Clustered) {
    if (r.stats.peak_saved > kPeakSavedFactor * t.num_leaves()) ++g_bounds.peak_violations;
    g_bounds.worst_peak = std::max(g_bounds.worst_peak, 1000 * r.stats.peak_saved / std::max<std::size_t>(1, t.num_leaves()));
  }
}

struct Mismatches {
  std::size_t count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome fixtures() {
  const auto start = Clock::now();
  Outcome o;
  std::vector<std::string> bad;

  {
    auto a = std::make_shared<Alphabet>();
    const LabeledTree q = parse_parens("book(author(john) chapter(XML))", a);
    const LabeledTree d = parse_parens(
        "catalog(book(author(name(john)) chapter(title(databases) section(XML)) chapter(title(queries))) book book)",
        a);
    for (Engine e : kEngines)
      if (!included(q, d, e)) bad.push_back(std::string("catalog query under ") + to_string(e));
  }

  {
    const LabeledTree t = parse_parens("root(l(ll lc lr(lrc)) c(cl(cll clr) cr) r(rl(rlc) rr))");
    enum : NodeId { ll = 2, lc = 3, lrc = 5, cl = 7, cll = 8, clr = 9, cr = 10, rl = 12, rlc = 13, rr = 14 };
    struct Variant {
      const char* name;
      std::vector<NodeList> sets;
      std::set<NodePair> want;
    };
    const NodeList s1{ll, cll, cr};
    const std::vector<Variant> variants{
        {"mop variant a", {s1, {lc, clr}, s1, {rl}, {rr}}, {{cll, rr}}},
        {"mop variant b", {{ll, lrc, clr}, {lc, cll}, {cl, rl}, {rlc, rr}}, {{ll, rlc}, {lrc, rr}}},
    };
    for (const auto& v : variants) {
      NodePairList right = identity_pairs(v.sets[0]);
      for (std::size_t i = 1; i < v.sets.size(); ++i) right = mop_right(t, right, v.sets[i]);
      NodePairList left = identity_pairs(v.sets.back());
      for (std::size_t i = v.sets.size() - 1; i-- > 0;) left = mop_left(t, v.sets[i], left);
      if (std::set<NodePair>(right.begin(), right.end()) != v.want) bad.push_back(std::string(v.name) + " right chain");
      if (std::set<NodePair>(left.begin(), left.end()) != v.want) bad.push_back(std::string(v.name) + " left chain");
      if (oracle::brute_mop(t, v.sets) != v.want) bad.push_back(std::string(v.name) + " brute force");
    }
  }

  {
    auto a = std::make_shared<Alphabet>();
    const LabeledTree p = parse_parens("a(b(a) a)", a);
    const LabeledTree t = parse_parens("a(b(a) b(a b(a)) a(a b))", a);
    for (Engine e : kEngines)
      if (emb(p, t, e).occurrences != NodeList{0}) bad.push_back(std::string("deep root fixture under ") + to_string(e));
  }

  const double secs = seconds_since(start);
  o.pass = bad.empty() && secs < kFixtureSeconds;
  o.detail = bad.empty() ? "all fixtures exact" : "wrong: " + bad.front();
  o.detail += ", " + fmt("%.3f s", secs) + " (budget " + fmt("%.0f s", kFixtureSeconds) + ")";
  return o;
}

// ---------------------------------------------------------------- criteria 2, 3

// Compares every engine, and the clustered engine at a second cluster size, against
// the dynamic program. Returns false if anything disagreed.
bool check_instance(const LabeledTree& p, const LabeledTree& t, std::uint32_t extra_cluster_size, Mismatches& mm,
                    bool with_brute) {
  const auto incl = oracle::km_dp(p, t);
  const NodeList want = oracle::deep_occurrences(t, incl);
  const NodeList roots = oracle::including_roots(t, incl);
  auto where = [&](const std::string& what) { return what + " P=" + to_parens(p) + " T=" + to_parens(t); };
  bool ok = true;
  if (with_brute && oracle::brute_emb(p, t) != want) {
    mm.add(where("brute force vs dynamic program"));
    ok = false;
  }
  auto run = [&](Engine e, std::uint32_t cs) {
    EmbOptions opt;
    opt.cluster_size = cs;
    const EmbResult r = emb(p, t, e, opt);
    note_bounds(r, t);
    if (r.occurrences != want || ancestors_of(t, r.occurrences) != roots) {
      mm.add(where(std::string(to_string(e)) + " cluster_size=" + std::to_string(cs)));
      ok = false;
    }
  };
  for (Engine e : kEngines) run(e, kDefaultClusterSize);
  if (extra_cluster_size) run(Engine::Clustered, extra_cluster_size);
  return ok;
}

// Label sequences of length m over k symbols, first occurrences in increasing order.
void restricted_growth(std::size_t m, std::uint32_t k, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t used) {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t c = 0; c < std::min(k, used + 1); ++c) {
      cur.push_back(c);
      rec(std::max(used, c + 1));
      cur.pop_back();
    }
  };
  rec(0);
}

std::size_t restricted_growth_count(std::size_t m, std::uint32_t k) {
  // dp over (length, symbols used)
  std::vector<std::size_t> ways(k + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> next(k + 1, 0);
    for (std::uint32_t u = 0; u <= k; ++u) {
      if (!ways[u]) continue;
      next[u] += ways[u] * u;
      if (u < k) next[u + 1] += ways[u];
    }
    ways = next;
  }
  std::size_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

Outcome exhaustive_small() {
  const auto start = Clock::now();
  Outcome o;
  Mismatches mm;
  std::size_t instances = 0, pairs = 0, enumerated = 0, sampled = 0;
  std::vector<std::vector<std::vector<NodeId>>> pshapes(5), tshapes(9);
  for (std::size_t n = 1; n <= 4; ++n) pshapes[n] = gen::all_shapes(n);
  for (std::size_t n = 1; n <= 8; ++n) tshapes[n] = gen::all_shapes(n);
  Rng rng(2024);

  for (std::uint32_t k = 1; k <= 3; ++k) {
    std::vector<std::vector<std::vector<std::uint32_t>>> rgs(13);
    for (std::size_t np = 1; np <= 4; ++np) {
      for (std::size_t nt = 1; nt <= 8; ++nt) {
        const std::size_t m = np + nt;
        const bool enumerate = restricted_growth_count(m, k) <= kLabelEnumCap;
        if (enumerate && rgs[m].empty()) restricted_growth(m, k, rgs[m]);
        for (const auto& ps : pshapes[np]) {
          for (const auto& ts : tshapes[nt]) {
            ++pairs;
            auto one = [&](const std::vector<std::uint32_t>& labels) {
              auto a = std::make_shared<Alphabet>();
              const std::vector<std::uint32_t> pl(labels.begin(), labels.begin() + np);
              const std::vector<std::uint32_t> tl(labels.begin() + np, labels.end());
              const LabeledTree p = gen::from_shape(ps, pl, a);
              const LabeledTree t = gen::from_shape(ts, tl, a);
              ++instances;
              check_instance(p, t, 3, mm, true);
            };
            if (enumerate) {
              enumerated += rgs[m].size();
              for (const auto& labels : rgs[m]) one(labels);
            } else {
              sampled += kLabelSamples;
              for (std::size_t s = 0; s < kLabelSamples; ++s) {
                std::vector<std::uint32_t> labels(m);
                for (auto& l : labels) l = static_cast<std::uint32_t>(gen::below(rng, k));
                one(labels);
              }
            }
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  o.pass = mm.count == 0 && secs < kExhaustiveSeconds;
  o.detail = std::to_string(pairs) + " shape pairs x alphabets, " + std::to_string(instances) + " instances (" +
             std::to_string(enumerated) + " enumerated labelings, " + std::to_string(sampled) + " sampled), " +
             std::to_string(mm.count) + " mismatches, " + fmt("%.1f s", secs);
  if (mm.count) std::fprintf(stderr, "  first mismatch: %s\n", mm.first.c_str());
  return o;
}

Outcome randomized() {
  const auto start = Clock::now();
  Outcome o;
  Mismatches mm;
  Rng rng(77);
  std::size_t included_count = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = std::make_shared<Alphabet>();
    const std::size_t k = 1 + gen::below(rng, 4);
    const std::size_t nt = 1 + gen::below(rng, 300);
    LabeledTree t;
    switch (gen::below(rng, 4)) {
      case 0: t = gen::manyleaf_tree(nt, k, rng, a); break;
      case 1: t = gen::chain_tree(nt, k, rng, a); break;
      default: t = gen::random_tree(nt, k, rng, 1 + gen::below(rng, 6), a); break;
    }
    const std::size_t np = 1 + gen::below(rng, std::min<std::size_t>(25, nt));
    LabeledTree p;
    switch (gen::below(rng, 3)) {
      case 0: p = gen::sample_pattern(t, np, rng); break;
      case 1: {
        // a sampled pattern with one label changed: often just barely not included
        const LabeledTree s = gen::sample_pattern(t, np, rng);
        std::vector<NodeId> parent(s.size());
        std::vector<std::uint32_t> labels(s.size());
        for (NodeId v = 0; v < s.size(); ++v) {
          parent[v] = s.parent(v);
          labels[v] = static_cast<std::uint32_t>(std::stoul(s.alphabet().name(s.label(v)).substr(1)));
        }
        labels[gen::below(rng, s.size())] = static_cast<std::uint32_t>(gen::below(rng, k));
        p = gen::from_shape(parent, labels, a);
        break;
      }
      default: p = gen::random_tree(np, k, rng, 1 + gen::below(rng, 4), a); break;
    }
    const auto cs = static_cast<std::uint32_t>(2 + gen::below(rng, 63));
    check_instance(p, t, cs, mm, false);
    if (!oracle::deep_occurrences(t, oracle::km_dp(p, t)).empty()) ++included_count;
    for (Engine e : kEngines) {
      // the public all_inclusions entry point against the table
      if (all_inclusions(p, t, e) != oracle::including_roots(t, oracle::km_dp(p, t)))
        mm.add(std::string("all_inclusions ") + to_string(e) + " P=" + to_parens(p) + " T=" + to_parens(t));
    }
  }
  const double secs = seconds_since(start);
  o.pass = mm.count == 0 && secs < kRandomSeconds;
  o.detail = "1000 pairs (" + std::to_string(included_count) + " included), " + std::to_string(mm.count) +
             " mismatches, " + fmt("%.1f s", secs);
  if (mm.count) std::fprintf(stderr, "  first mismatch: %s\n", mm.first.c_str());
  return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome cross_equivalence() {
  const auto start = Clock::now();
  Outcome o;
  CrossTally tally;
  Rng rng(404);
  std::size_t trees = 0;

  // every ordered shape up to 9 nodes, binarized, under each lemma parameter s
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const auto& shape : gen::all_shapes(n)) {
      std::vector<std::uint32_t> labels(n);
      for (auto& l : labels) l = static_cast<std::uint32_t>(gen::below(rng, 3));
      const LabeledTree b = binarize(gen::from_shape(shape, labels)).tree;
      if (b.size() < 2) continue;
      for (std::uint32_t s : {2u, 3u, 4u}) {
        if ((b.size() + s - 1) / s < 2) continue;
        ++trees;
        ClusteredIndex ci(b, cluster_partition(b, s));
        for (Proc p : kAllProcs)
          for (int rep = 0; rep < 2; ++rep) cross_check(ci, p, rng, tally);
      }
    }
  }
  // random trees up to 40 nodes, both as lemma parameters and as node budgets
  for (int i = 0; i < 1500; ++i) {
    const LabeledTree b = binarize(gen::random_tree(10 + gen::below(rng, 31), 3, rng, 1 + gen::below(rng, 5))).tree;
    const std::uint32_t s = 2 + static_cast<std::uint32_t>(gen::below(rng, 3));
    ++trees;
    ClusteredIndex by_s(b, cluster_partition(b, s));
    ClusteredIndex by_size(b, s);
    for (Proc p : kAllProcs) {
      cross_check(by_s, p, rng, tally);
      cross_check(by_size, p, rng, tally);
    }
  }
  // larger trees with wide clusters, beyond the sizes above
  for (int i = 0; i < 600; ++i) {
    const LabeledTree b = binarize(gen::family_tree(static_cast<gen::Family>(i % 3), 40 + gen::below(rng, 600), 3, rng)).tree;
    ++trees;
    ClusteredIndex ci(b, 2 + static_cast<std::uint32_t>(gen::below(rng, 63)));
    for (Proc p : kAllProcs) cross_check(ci, p, rng, tally);
  }
  // 500 seeded inputs per procedure
  std::size_t per_proc = 0;
  for (Proc p : kAllProcs) {
    for (int i = 0; i < 500; ++i) {
      const LabeledTree b = gen::random_binary_tree(2 + gen::below(rng, 39), 3, rng);
      const std::uint32_t s = 2 + static_cast<std::uint32_t>(gen::below(rng, 3));
      if ((b.size() + s - 1) / s < 2) {
        ClusteredIndex ci(b, 2);
        cross_check(ci, p, rng, tally);
      } else {
        ClusteredIndex ci(b, cluster_partition(b, s));
        cross_check(ci, p, rng, tally);
      }
      ++per_proc;
    }
  }
  const double secs = seconds_since(start);
  o.pass = tally.mismatches == 0;
  o.detail = std::to_string(tally.checks) + " checks over " + std::to_string(trees) + " indexed trees + " +
             std::to_string(per_proc) + " seeded inputs, " + std::to_string(tally.mismatches) + " mismatches, " +
             fmt("%.1f s", secs);
  if (tally.mismatches) std::fprintf(stderr, "  first mismatch: %s\n", tally.first_failure.c_str());
  return o;
}

// ---------------------------------------------------------------- criterion 5

Outcome mop_laws() {
  const auto start = Clock::now();
  Outcome o;
  Mismatches mm;
  Rng rng(505);
  std::size_t nonempty = 0;
  for (int seed = 0; seed < 500; ++seed) {
    const LabeledTree t = gen::random_tree(4 + gen::below(rng, 40), 2, rng, 1 + gen::below(rng, 4));
    const std::size_t k = 2 + gen::below(rng, 3);
    std::vector<NodeList> sets;
    while (sets.size() < k) {
      NodeList x = random_deep(t, rng, 1, 3);
      // keep at most 6 nodes, still deep and in preorder
      while (x.size() > 6) x.erase(x.begin() + static_cast<std::ptrdiff_t>(gen::below(rng, x.size())));
      if (!x.empty()) sets.push_back(x);
    }
    NodePairList right = identity_pairs(sets[0]);
    for (std::size_t i = 1; i < k; ++i) right = mop_right(t, right, sets[i]);
    NodePairList left = identity_pairs(sets.back());
    for (std::size_t i = k - 1; i-- > 0;) left = mop_left(t, sets[i], left);
    const std::set<NodePair> brute = oracle::brute_mop(t, sets);

    // the same chains with node arrays over the binarized tree
    const Binarized b = binarize(t);
    ClusteredIndex ci(b.tree, 2 + static_cast<std::uint32_t>(gen::below(rng, 8)));
    auto to_b = [&](const NodeList& x) {
      NodeList y;
      for (NodeId v : x) y.push_back(b.to_binary[v]);
      return ci.from_list(y);
    };
    auto back = [&](const PairArray& u) {
      std::set<NodePair> s;
      for (auto [x, y] : ci.to_pairs(u)) s.insert({b.from_binary[x], b.from_binary[y]});
      return s;
    };
    PairArray ar{to_b(sets[0]), to_b(sets[0])};
    for (std::size_t i = 1; i < k; ++i) ar = ci.mop_right(ar, to_b(sets[i]));
    PairArray al{to_b(sets.back()), to_b(sets.back())};
    for (std::size_t i = k - 1; i-- > 0;) al = ci.mop_left(to_b(sets[i]), al);

    const std::set<NodePair> rs(right.begin(), right.end()), ls(left.begin(), left.end());
    if (rs != brute || ls != brute || back(ar) != brute || back(al) != brute) {
      std::ostringstream os;
      os << "T=" << to_parens(t) << " sets:";
      for (const auto& x : sets) os << " " << show(x);
      mm.add(os.str());
    }
    if (!brute.empty()) ++nonempty;
  }
  const double secs = seconds_since(start);
  o.pass = mm.count == 0;
  o.detail = "500 chains (" + std::to_string(nonempty) + " non-empty), list and array, " + std::to_string(mm.count) +
             " mismatches, " + fmt("%.2f s", secs);
  if (mm.count) std::fprintf(stderr, "  first mismatch: %s\n", mm.first.c_str());
  return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome instrumented_bounds(bool ran_2_and_3) {
  Outcome o;
  if (!ran_2_and_3) {
    o.pass = false;
    o.detail = "needs criteria 2 and 3 in the same run";
    return o;
  }
  o.pass = g_bounds.emb_violations == 0 && g_bounds.peak_violations == 0 && g_bounds.runs > 0;
  o.detail = std::to_string(g_bounds.runs) + " embedding runs, " + std::to_string(g_bounds.emb_violations) +
             " |Emb(v)| bound violations, " + std::to_string(g_bounds.peak_violations) +
             " peak-saved violations (worst peak/l_T " + fmt("%.3f", g_bounds.worst_peak / 1000.0) + ", limit " +
             std::to_string(kPeakSavedFactor) + ")";
  return o;
}

// ---------------------------------------------------------------- criterion 7

Outcome clustering_invariants() {
  const auto start = Clock::now();
  Outcome o;
  Rng rng(707);
  std::size_t partitions = 0, failures = 0, largest = 0, max_clusters_ratio_x100 = 0;
  std::string first;
  for (int i = 0; i < 50; ++i) {
    // sizes spread geometrically from 10^2 to 10^5
    const auto n = static_cast<std::size_t>(100.0 * std::pow(1000.0, i / 49.0));
    LabeledTree b;
    // the last and largest tree is a plain random binary tree of 10^5 nodes
    switch ((i + 3) % 4) {
      case 0: b = gen::random_binary_tree(n, 2, rng); break;
      case 1: b = binarize(gen::random_tree(n / 2 + 1, 2, rng, 6)).tree; break;
      case 2: b = binarize(gen::manyleaf_tree(n / 2 + 1, 2, rng)).tree; break;
      default: b = binarize(gen::chain_tree(n, 2, rng)).tree; break;
    }
    largest = std::max(largest, b.size());
    for (std::uint32_t s : {4u, 16u, 64u}) {
      if ((b.size() + s - 1) / s < 2) continue;
      const ClusterPartition cp = cluster_partition(b, s);
      const PartitionReport rep = check_partition(b, cp);
      ++partitions;
      max_clusters_ratio_x100 = std::max(max_clusters_ratio_x100, 100 * cp.clusters.size() / s);
      if (!rep.ok && failures++ == 0)
        first = "n=" + std::to_string(b.size()) + " s=" + std::to_string(s) + ": " + rep.problem;
    }
  }
  std::size_t ldepth_bad = 0;
  for (int i = 0; i < 50; ++i) {
    const LabeledTree p = gen::family_tree(static_cast<gen::Family>(i % 3), 1 + gen::below(rng, 5000), 2, rng);
    const auto h = heavy_leaf_decompose(p);
    const double bound = std::log2(static_cast<double>(p.num_leaves()));
    for (NodeId v = 0; v < p.size(); ++v)
      if (h.ldepth[v] > bound + 1e-9) ++ldepth_bad;
  }
  const double secs = seconds_since(start);
  o.pass = failures == 0 && ldepth_bad == 0;
  o.detail = std::to_string(partitions) + " partitions (largest tree " + std::to_string(largest) +
             " nodes, max clusters/s " + fmt("%.2f", max_clusters_ratio_x100 / 100.0) + "), " +
             std::to_string(failures) + " invariant failures, " + std::to_string(ldepth_bad) +
             " ldepth violations over 50 patterns, " + fmt("%.1f s", secs);
  if (failures) std::fprintf(stderr, "  first failure: %s\n", first.c_str());
  return o;
}

// ---------------------------------------------------------------- criterion 8

Outcome macro_relations() {
  const auto start = Clock::now();
  Outcome o;
  constexpr std::size_t kExhaustiveUpTo = 17;
  constexpr std::size_t kRandomTrees = 20000;
  constexpr std::uint32_t s = 3;
  std::size_t trees = 0, pairs = 0, bad = 0;
  std::string first;
  auto check = [&](const LabeledTree& t) {
    const MacroTree mt(t, cluster_partition(t, s));
    NcaIndex ni(t);
    ++trees;
    for (NodeId v = 0; v < t.size(); ++v)
      for (NodeId w = 0; w < t.size(); ++w) {
        ++pairs;
        if (macro_ancestor(mt, v, w) != t.is_ancestor(v, w) || macro_left_of(mt, v, w) != t.left_of(v, w) ||
            macro_nca(mt, v, w) != ni.query(v, w)) {
          if (bad++ == 0) first = to_parens(t) + " v=" + std::to_string(v) + " w=" + std::to_string(w);
        }
      }
  };
  // ⌈n/3⌉ >= 2 needs at least 4 nodes
  for (std::size_t n = 4; n <= kExhaustiveUpTo; ++n)
    for (const auto& shape : gen::all_binary_shapes(n)) check(gen::from_shape(shape, {}));
  Rng rng(808);
  for (std::size_t i = 0; i < kRandomTrees; ++i)
    check(gen::random_binary_tree(kExhaustiveUpTo + 1 + gen::below(rng, 25 - kExhaustiveUpTo), 1, rng));
  const double secs = seconds_since(start);
  o.pass = bad == 0;
  o.detail = "all binary shapes of 4.." + std::to_string(kExhaustiveUpTo) + " nodes + " +
             std::to_string(kRandomTrees) + " random of " + std::to_string(kExhaustiveUpTo + 1) + "..25 (" +
             std::to_string(trees) + " trees, " + std::to_string(pairs) + " pairs), " + std::to_string(bad) +
             " mismatches, " + fmt("%.1f s", secs);
  if (bad) std::fprintf(stderr, "  first mismatch: %s\n", first.c_str());
  return o;
}

// ---------------------------------------------------------------- criterion 9

Outcome nca_queries() {
  Outcome o;
  Rng rng(909);
  const std::size_t n = 100000;
  const LabeledTree t = gen::random_tree(n, 2, rng, 3);
  const NcaIndex ni(t);
  std::vector<std::pair<NodeId, NodeId>> q(100000);
  for (auto& [u, v] : q) {
    u = static_cast<NodeId>(gen::below(rng, n));
    v = static_cast<NodeId>(gen::below(rng, n));
  }
  std::size_t bad = 0;
  for (auto [u, v] : q)
    if (ni.query(u, v) != naive_nca(t, u, v)) ++bad;

  // median over batches of 100 queries
  std::vector<double> per_query;
  NodeId sink = 0;
  for (std::size_t b = 0; b + 100 <= q.size(); b += 100) {
    const auto start = Clock::now();
    for (std::size_t i = b; i < b + 100; ++i) sink ^= ni.query(q[i].first, q[i].second);
    per_query.push_back(seconds_since(start) * 1e6 / 100);
  }
  std::nth_element(per_query.begin(), per_query.begin() + per_query.size() / 2, per_query.end());
  const double median = per_query[per_query.size() / 2];
  o.pass = bad == 0;
  o.detail = "100000 queries on " + std::to_string(n) + " nodes (height " + std::to_string(t.height()) + "), " +
             std::to_string(bad) + " mismatches, median " + fmt("%.3f us", median) + " per query (soft limit " +
             fmt("%.1f us", kNcaMedianMicros) + (median < kNcaMedianMicros ? ", met)" : ", NOT met)");
  if (sink == kNone) o.detail += " ";
  return o;
}

// ---------------------------------------------------------------- criterion 10

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log2(x[i]), ly = std::log2(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome performance_trend() {
  const auto start = Clock::now();
  Outcome o;
  o.soft = true;
  constexpr int kTrials = 3;
  const std::vector<std::size_t> sizes{1u << 13, 1u << 14, 1u << 15, 1u << 16};
  std::vector<double> xs, simple_t, clustered_t;
  std::string table;
  for (std::size_t nt : sizes) {
    std::vector<double> ts, tc;
    for (int trial = 0; trial < kTrials; ++trial) {
      Rng rng(1000 + nt * 7 + static_cast<std::size_t>(trial));
      const LabeledTree t = gen::manyleaf_tree(nt, 4, rng);
      const LabeledTree p = gen::sample_pattern(t, nt / 8, rng);
      for (Engine e : {Engine::Simple, Engine::Clustered}) {
        const auto s = Clock::now();
        const EmbResult r = emb(p, t, e);
        const double secs = seconds_since(s);
        (e == Engine::Simple ? ts : tc).push_back(secs);
        if (r.occurrences.empty()) o.pass = false;  // sampled patterns are always included
      }
    }
    std::sort(ts.begin(), ts.end());
    std::sort(tc.begin(), tc.end());
    xs.push_back(static_cast<double>(nt));
    simple_t.push_back(ts[kTrials / 2]);
    clustered_t.push_back(tc[kTrials / 2]);
    table += " " + std::to_string(nt) + ":" + fmt("%.3f", ts[kTrials / 2]) + "/" + fmt("%.3f", tc[kTrials / 2]);
  }
  const double a = slope(xs, simple_t), b = slope(xs, clustered_t);
  const double secs = seconds_since(start);
  o.pass = o.pass && (a - b) >= kSlopeGap && secs < kBenchSeconds;
  o.detail = "slope simple " + fmt("%.3f", a) + ", clustered " + fmt("%.3f", b) + ", gap " + fmt("%.3f", a - b) +
             " (need >= " + fmt("%.2f", kSlopeGap) + "); median s simple/clustered" + table + "; " +
             fmt("%.0f s", secs);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long c = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || c < 1 || c > 10) {
      std::fprintf(stderr, "usage: acceptance [criterion numbers 1-10...]\n");
      return 2;
    }
    only.insert(static_cast<int>(c));
  }
  auto wanted = [&](int c) { return only.empty() || only.count(c) > 0; };

  std::printf("kernels: %s, default cluster size %u\n", kernels::active().name, kDefaultClusterSize);
  std::fflush(stdout);
  int hard_failures = 0;
  auto report = [&](int c, const Outcome& o) {
    std::printf("criterion %d: %s%s  %s\n", c, o.pass ? "PASS" : "FAIL", o.soft ? " (soft)" : "", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && !o.soft) ++hard_failures;
  };

  if (wanted(1)) report(1, fixtures());
  if (wanted(2)) report(2, exhaustive_small());
  if (wanted(3)) report(3, randomized());
  if (wanted(4)) report(4, cross_equivalence());
  if (wanted(5)) report(5, mop_laws());
  if (wanted(6)) report(6, instrumented_bounds(wanted(2) && wanted(3)));
  if (wanted(7)) report(7, clustering_invariants());
  if (wanted(8)) report(8, macro_relations());
  if (wanted(9)) report(9, nca_queries());
  if (wanted(10)) report(10, performance_trend());
  return hard_failures == 0 ? 0 : 1;
}
