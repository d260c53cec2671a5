#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treeincl/embed.hpp"
#include "treeincl/generate.hpp"
#include "treeincl/tree.hpp"

using namespace treeincl;

namespace {

// Exit codes are part of the interface: 0 included, 1 not included, 2 anything else.
constexpr int kIncluded = 0;
constexpr int kNotIncluded = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LabeledTree parse_as(const std::string& format, std::string_view text, std::shared_ptr<Alphabet> a) {
  if (format == "parens") return parse_parens(text, std::move(a));
  if (format == "xml") return parse_xml(text, std::move(a));
  throw UsageError("unknown format '" + format + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct QueryArgs {
  std::string pattern, target;
  std::string engine = "clustered";
  std::string format = "parens";
  std::string output = "roots";
  std::uint32_t cluster_size = kDefaultClusterSize;
};

int run_query(const QueryArgs& q) {
  auto engine = parse_engine(q.engine);
  if (!engine) throw UsageError("unknown engine '" + q.engine + "'");
  if (q.output != "roots" && q.output != "deep" && q.output != "count")
    throw UsageError("unknown output '" + q.output + "'");
  auto alphabet = std::make_shared<Alphabet>();
  const LabeledTree p = parse_as(q.format, read_file(q.pattern), alphabet);
  const LabeledTree t = parse_as(q.format, read_file(q.target), alphabet);

  EmbOptions opt;
  opt.cluster_size = q.cluster_size;
  const EmbResult r = emb(p, t, *engine, opt);
  const NodeList roots = ancestors_of(t, r.occurrences);
  std::string out;
  if (q.output == "count") {
    out = std::to_string(roots.size()) + "\n";
  } else {
    for (NodeId v : q.output == "deep" ? r.occurrences : roots) out += std::to_string(v) + "\n";
  }
  std::fwrite(out.data(), 1, out.size(), stdout);
  return r.occurrences.empty() ? kNotIncluded : kIncluded;
}

struct GenArgs {
  long long nodes = 0, alphabet = 0, max_children = 4;
  std::uint64_t seed = 0;
};

int run_gen(const GenArgs& g) {
  if (g.nodes < 1) throw UsageError("--nodes must be at least 1");
  if (g.alphabet < 1) throw UsageError("--alphabet must be at least 1");
  if (g.max_children < 1) throw UsageError("--max-children must be at least 1");
  gen::Rng rng(g.seed);
  const LabeledTree t = gen::random_tree(static_cast<std::size_t>(g.nodes), static_cast<std::size_t>(g.alphabet),
                                         rng, static_cast<std::size_t>(g.max_children));
  std::cout << to_parens(t) << "\n";
  return 0;
}

struct BenchArgs {
  std::string sizes, engines = "simple,firstlabel,clustered", csv, family = "random", pattern = "sampled";
  long long trials = 1, alphabet = 4, ratio = 8;
  std::uint64_t seed = 1;
  std::uint32_t cluster_size = kDefaultClusterSize;
};

int run_bench(const BenchArgs& b) {
  std::vector<std::size_t> sizes;
  for (const auto& s : split_list(b.sizes)) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v < 1) throw UsageError("bad size '" + s + "'");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw UsageError("--sizes is empty");
  std::vector<Engine> engines;
  for (const auto& e : split_list(b.engines)) {
    auto parsed = parse_engine(e);
    if (!parsed) throw UsageError("unknown engine '" + e + "'");
    engines.push_back(*parsed);
  }
  if (engines.empty()) throw UsageError("--engines is empty");
  gen::Family family;
  if (!gen::parse_family(b.family, family)) throw UsageError("unknown family '" + b.family + "'");
  if (b.pattern != "sampled" && b.pattern != "random") throw UsageError("unknown pattern mode '" + b.pattern + "'");
  if (b.trials < 1 || b.alphabet < 1 || b.ratio < 1) throw UsageError("--trials, --alphabet and --ratio must be positive");

  std::ofstream csv(b.csv);
  if (!csv) throw UsageError("cannot write " + b.csv);
  csv << "engine,n_p,n_t,l_p,l_t,trial,micros,included,peak_saved\n";

  EmbOptions opt;
  opt.cluster_size = b.cluster_size;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const std::size_t n_t = sizes[si];
    const std::size_t n_p = std::max<std::size_t>(1, n_t / static_cast<std::size_t>(b.ratio));
    for (long long trial = 0; trial < b.trials; ++trial) {
      // one stream per (size, trial) so rows do not depend on which engines are listed
      std::seed_seq seq{b.seed, static_cast<std::uint64_t>(n_t), static_cast<std::uint64_t>(trial)};
      gen::Rng rng(seq);
      auto alphabet = std::make_shared<Alphabet>();
      const LabeledTree t = gen::family_tree(family, n_t, static_cast<std::size_t>(b.alphabet), rng, alphabet);
      const LabeledTree p = b.pattern == "sampled"
                                ? gen::sample_pattern(t, n_p, rng)
                                : gen::family_tree(family, n_p, static_cast<std::size_t>(b.alphabet), rng, alphabet);
      for (Engine e : engines) {
        const auto start = std::chrono::steady_clock::now();
        const EmbResult r = emb(p, t, e, opt);
        const auto micros =
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
        csv << to_string(e) << ',' << p.size() << ',' << t.size() << ',' << p.num_leaves() << ','
            << t.num_leaves() << ',' << trial << ',' << micros << ',' << (r.occurrences.empty() ? 0 : 1) << ','
            << r.stats.peak_saved << '\n';
      }
    }
  }
  if (!csv.flush()) throw UsageError("write to " + b.csv + " failed");
  return 0;
}

int run_convert(const std::string& from, const std::string& to) {
  if (to != "parens" && to != "xml") throw UsageError("unknown format '" + to + "'");
  std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  const LabeledTree t = parse_as(from, text, nullptr);
  std::cout << (to == "parens" ? to_parens(t) : to_xml(t)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered tree inclusion: query, generate, convert and benchmark"};
  app.require_subcommand(1);

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Report where the pattern is included in the target");
  query->add_option("--pattern", q.pattern, "pattern tree file")->required();
  query->add_option("--target", q.target, "target tree file")->required();
  query->add_option("--engine", q.engine, "simple | firstlabel | clustered")->capture_default_str();
  query->add_option("--format", q.format, "parens | xml")->capture_default_str();
  query->add_option("--output", q.output, "roots | deep | count")->capture_default_str();
  query->add_option("--cluster-size", q.cluster_size, "node budget per cluster (clustered engine)")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();

  GenArgs g;
  auto* gencmd = app.add_subcommand("gen", "Print a random tree in parens format");
  gencmd->add_option("--nodes", g.nodes, "number of nodes")->required();
  gencmd->add_option("--alphabet", g.alphabet, "number of labels l0..l{K-1}")->required();
  gencmd->add_option("--seed", g.seed, "random seed")->required();
  gencmd->add_option("--max-children", g.max_children, "fan-out cap")->capture_default_str();

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "Time the engines on generated instances and write CSV");
  bench->add_option("--sizes", b.sizes, "comma-separated target sizes")->required();
  bench->add_option("--engines", b.engines, "comma-separated engines")->capture_default_str();
  bench->add_option("--trials", b.trials, "instances per size")->capture_default_str();
  bench->add_option("--seed", b.seed, "random seed")->capture_default_str();
  bench->add_option("--csv", b.csv, "output CSV path")->required();
  bench->add_option("--family", b.family, "random | manyleaf | chain")->capture_default_str();
  bench->add_option("--pattern", b.pattern, "sampled (a node-deletion of the target) | random")
      ->capture_default_str();
  bench->add_option("--alphabet", b.alphabet, "number of labels")->capture_default_str();
  bench->add_option("--ratio", b.ratio, "n_T / n_P")->capture_default_str();
  bench->add_option("--cluster-size", b.cluster_size, "node budget per cluster (clustered engine)")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();

  std::string from, to;
  auto* convert = app.add_subcommand("convert", "Convert a tree on stdin between formats");
  convert->add_option("--from", from, "parens | xml")->required();
  convert->add_option("--to", to, "parens | xml")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*query) return run_query(q);
    if (*gencmd) return run_gen(g);
    if (*bench) return run_bench(b);
    if (*convert) return run_convert(from, to);
  } catch (const std::exception& e) {
    std::cerr << "treeincl: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
