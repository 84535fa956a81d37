#include "regtsp/cli/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "regtsp/cli/bench.hpp"
#include "regtsp/corpus.hpp"
#include "regtsp/generators.hpp"
#include "regtsp/oracles.hpp"
#include "regtsp/regular_decompose.hpp"
#include "regtsp/tour_io.hpp"

namespace regtsp::cli {
namespace {

using json = nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(ErrorKind::kInput, "cannot write '" + path + "'");
}

std::string instance_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string to_string(const BigInt& v) {
  return v.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// Bidirected graph reduced to degree k_target, or to 2^floor(log2 K) when 0.
Digraph working_digraph(const Graph& g, unsigned k_target) {
  Digraph d = bidirect(g);
  const unsigned k = d.regular_degree().value_or(0);
  if (k == 0) fail(ErrorKind::kPrecondition, "graph is not regular");
  if (k_target == 0) k_target = std::bit_floor(k);
  return k_target == k ? d : regular_subgraph(d, k_target);
}

struct Options {
  bool json = false;

  // gen
  std::string family = "random";
  unsigned n = 0;
  unsigned k = 0;
  unsigned dim = 0;
  std::vector<unsigned> offsets;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> relabel_seed;
  std::string output;

  // tour / verify / oracle
  std::string graph_path;
  std::string tour_path;
  std::string algo = "rand";
  std::optional<std::uint64_t> tour_seed;
  bool exact_cost = false;
  bool omit_timing = false;

  // bench
  std::vector<unsigned> bench_n;
  std::vector<unsigned> bench_k;
  std::vector<std::string> bench_graphs;
  unsigned bench_seeds = 5;
  std::uint64_t seed_base = 1;
  std::vector<std::string> bench_algos{"rand", "det", "mst2"};
  bool bench_optimum = false;
  unsigned jobs = 1;

  // oracle
  unsigned r = 0;
  unsigned reduce_k = 0;
  std::size_t runs = 100000;
  std::string flips = "cycle";
  bool no_oracles = false;
};

int cmd_gen(const Options& o, std::ostream& out) {
  Graph g;
  if (o.family == "random") {
    if (o.n == 0 || o.k == 0) fail(ErrorKind::kInput, "random: -n and -k are required");
    if ((static_cast<std::uint64_t>(o.n) * o.k) % 2 != 0) {
      fail(ErrorKind::kInput, "random: n*k must be even (n=" + std::to_string(o.n) + ", k=" + std::to_string(o.k) + ")");
    }
    g = random_instance(o.n, o.k, o.seed);
  } else {
    std::vector<unsigned> params;
    if (o.family == "cycle" || o.family == "complete") {
      if (o.n == 0) fail(ErrorKind::kInput, o.family + ": -n is required");
      params = {o.n};
    } else if (o.family == "hypercube") {
      if (o.dim == 0) fail(ErrorKind::kInput, "hypercube: --dim is required");
      params = {o.dim};
    } else if (o.family == "circulant") {
      if (o.n == 0 || o.offsets.empty()) fail(ErrorKind::kInput, "circulant: -n and --offsets are required");
      params = {o.n};
      params.insert(params.end(), o.offsets.begin(), o.offsets.end());
    }
    g = gen_named(o.family, params);
  }
  if (o.relabel_seed) g = relabel_randomly(g, *o.relabel_seed);

  if (o.output.empty()) {
    out << format_graph(g);
    return kOk;
  }
  write_graph_file(g, o.output);
  json summary{{"family", o.family},
               {"n", g.num_vertices()},
               {"m", g.num_edges()},
               {"k", g.regular_degree() ? json(*g.regular_degree()) : json(nullptr)},
               {"connected", g.is_connected()},
               {"output", o.output}};
  summary["seed"] = o.family == "random" ? json(o.seed) : json(nullptr);
  if (o.json) {
    out << summary.dump() << '\n';
  } else {
    out << summary.dump(2) << '\n';
  }
  return kOk;
}

int cmd_tour(const Options& o, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const Tour tour = solve(g, o.algo, o.tour_seed, o.exact_cost);
  const std::string text = format_tour_json(tour, !o.omit_timing);
  if (o.output.empty()) {
    out << text;
    return kOk;
  }
  write_text(o.output, text);
  if (o.json) {
    out << json{{"output", o.output}, {"n", g.num_vertices()}, {"num_cycles", tour.meta.num_cycles},
                {"cost_bound", tour.cost_bound}}
               .dump()
        << '\n';
  } else {
    out << "wrote " << o.output << ": " << tour.meta.algo << " n=" << g.num_vertices()
        << " r=" << tour.meta.num_cycles << " cost_bound=" << tour.cost_bound << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const ClaimedTour claimed = parse_tour_json(read_text(o.tour_path));
  const VerifyResult result = verify_tour(g, claimed);
  if (o.json) {
    out << json{{"ok", result.ok}, {"failure", result.ok ? json(nullptr) : json(result.failure)}}.dump() << '\n';
  } else {
    out << (result.ok ? std::string("ok") : "FAIL: " + result.failure) << '\n';
  }
  return result.ok ? kOk : kVerifyFailed;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.ns.assign(o.bench_n.begin(), o.bench_n.end());
  spec.ks = o.bench_k;
  spec.graph_files = o.bench_graphs;
  for (unsigned i = 0; i < o.bench_seeds; ++i) spec.seeds.push_back(o.seed_base + i);
  spec.algos = o.bench_algos;
  spec.exact_cost = o.exact_cost;
  spec.optimum = o.bench_optimum;
  spec.jobs = o.jobs;
  for (const auto& algo : spec.algos) {
    if (algo != "rand" && algo != "det" && algo != "mst2") fail(ErrorKind::kInput, "unknown algorithm '" + algo + "'");
  }
  if (spec.ns.empty() != spec.ks.empty()) fail(ErrorKind::kInput, "bench: give both -n and -k, or neither");

  const auto records = run_sweep(spec);
  const auto summary = summarize(records);
  for (const auto& rec : records) {
    if (rec.error) err << "run failed: " << rec.instance << ' ' << rec.algo << ' ' << rec.seed << ": " << *rec.error << '\n';
  }

  std::ostringstream csv;
  write_csv(csv, records, summary);
  if (o.output.empty()) {
    out << csv.str();
  } else {
    write_text(o.output, csv.str());
    if (o.json) out << json{{"output", o.output}, {"rows", records.size()}, {"summary_rows", summary.size()}}.dump() << '\n';
  }
  return kOk;
}

int cmd_held_karp(const Options& o, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  if (g.num_vertices() > kHeldKarpMaxVertices) {
    fail(ErrorKind::kInput, "held-karp: n must be at most " + std::to_string(kHeldKarpMaxVertices));
  }
  if (!g.is_connected()) fail(ErrorKind::kPrecondition, "held-karp: graph is disconnected");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t opt = held_karp_opt(g);
  const double ms = elapsed_ms(start);
  if (o.json) {
    out << json{{"instance", instance_name(o.graph_path)}, {"n", g.num_vertices()}, {"optimum", opt}, {"elapsed_ms", ms}}
               .dump()
        << '\n';
  } else {
    out << opt << '\n';
  }
  return kOk;
}

int cmd_covers(const Options& o, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  if (g.num_vertices() > kEnumerationMaxVertices) {
    fail(ErrorKind::kInput, "covers: n must be at most " + std::to_string(kEnumerationMaxVertices));
  }
  const Digraph d = working_digraph(g, o.reduce_k ? o.reduce_k : g.regular_degree().value_or(0));
  const unsigned k = *d.regular_degree();
  const unsigned n = d.num_vertices();
  const auto census = cycle_cover_census(d);
  bool within = true;
  json rows = json::array();
  for (const auto& [r, count] : census) {
    // No loops, so every cycle has length >= 2 and r <= n/2.
    const BigInt bound = lemma4_bound(n, k, static_cast<unsigned>(r));
    const bool ok = BigInt(count) <= bound;
    within = within && ok;
    rows.push_back({{"r", r}, {"count", count}, {"bound", to_string(bound)}, {"ok", ok}});
  }
  if (o.json) {
    out << json{{"instance", instance_name(o.graph_path)}, {"n", n}, {"k", k}, {"census", rows}, {"within_bound", within}}
               .dump()
        << '\n';
  } else {
    out << "n=" << n << " k=" << k << '\n';
    for (const auto& row : rows) {
      out << "r=" << row["r"].get<std::size_t>() << " count=" << row["count"].get<std::size_t>()
          << " bound=" << row["bound"].get<std::string>() << (row["ok"].get<bool>() ? "" : " EXCEEDED") << '\n';
    }
  }
  return within ? kOk : kVerifyFailed;
}

int cmd_lemma4(const Options& o, std::ostream& out) {
  const BigInt bound = lemma4_bound(o.n, o.k, o.r);
  if (o.json) {
    out << json{{"n", o.n}, {"k", o.k}, {"r", o.r}, {"bound", to_string(bound)}}.dump() << '\n';
  } else {
    out << bound << '\n';
  }
  return kOk;
}

int cmd_f_log(const Options& o, std::ostream& out) {
  if (o.n == 0 || o.k == 0) fail(ErrorKind::kInput, "f-log: n and k must be positive");
  const double lf = f_log(o.n, o.k);
  if (o.json) {
    out << json{{"n", o.n}, {"k", o.k}, {"f_log", lf}, {"f", std::exp(lf)}}.dump() << '\n';
  } else {
    out << std::setprecision(17) << lf << '\n';
  }
  return kOk;
}

int cmd_threshold(const Options& o, std::ostream& out) {
  const CycleThreshold t = cycle_threshold(o.n, o.k);
  const auto ceiling = static_cast<std::uint64_t>(std::ceil(t.value));
  if (o.json) {
    out << json{{"n", o.n}, {"k", o.k}, {"threshold", t.value}, {"ceil", ceiling}, {"vacuous", t.vacuous}}.dump() << '\n';
  } else {
    out << std::setprecision(10) << t.value << (t.vacuous ? " (vacuous)" : "") << '\n';
  }
  return kOk;
}

int cmd_distribution(const Options& o, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const Digraph d = working_digraph(g, o.reduce_k);
  ColoringOptions options;
  options.flips = o.flips == "component" ? FlipGranularity::kPerComponent : FlipGranularity::kPerAlternatingCycle;
  const DistributionReport rep = coloring_distribution_test(d, o.runs, o.seed, options);
  if (o.json) {
    json colorings = json::array();
    for (const auto& [colors, count] : rep.counts) colorings.push_back({{"colors", colors}, {"count", count}});
    out << json{{"instance", instance_name(o.graph_path)}, {"n", d.num_vertices()}, {"k", *d.regular_degree()},
                {"runs", rep.runs}, {"distinct", rep.counts.size()}, {"max_frequency", rep.max_frequency},
                {"f", rep.f}, {"bound", rep.bound}, {"within_bound", rep.within_bound}, {"colorings", colorings}}
               .dump()
        << '\n';
  } else {
    out << "runs=" << rep.runs << " distinct=" << rep.counts.size() << " max_frequency=" << rep.max_frequency
        << " f=" << rep.f << " bound=" << rep.bound << (rep.within_bound ? " ok" : " EXCEEDED") << '\n';
  }
  return rep.within_bound ? kOk : kVerifyFailed;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  const auto corpus = standard_corpus();
  write_corpus(o.output, corpus, !o.no_oracles);
  if (o.json) {
    out << json{{"output", o.output}, {"instances", corpus.size()}, {"oracles", !o.no_oracles}}.dump() << '\n';
  } else {
    out << "wrote " << corpus.size() << " instances to " << o.output << '\n';
  }
  return kOk;
}

int exit_code_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return kInputError;
    case ErrorKind::kPrecondition:
      return kPreconditionFailed;
    case ErrorKind::kInternal:
      break;
  }
  return kInternalError;
}

void report_error(bool as_json, std::ostream& err, const std::string& kind, const std::string& message) {
  if (as_json) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
  } else {
    err << "error: " << message << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"TSP tours on regular graphs: generate, solve, verify, benchmark", "regtsp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  gen->add_option("--family", o.family, "random, cycle, complete, hypercube, circulant or petersen")
      ->check(CLI::IsMember({"random", "cycle", "complete", "hypercube", "circulant", "petersen"}));
  gen->add_option("-n", o.n, "Vertex count (complete: q)");
  gen->add_option("-k", o.k, "Degree (random)");
  gen->add_option("--dim", o.dim, "Hypercube dimension");
  gen->add_option("--offsets", o.offsets, "Circulant offsets")->delimiter(',');
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--relabel-seed", o.relabel_seed, "Apply a random vertex relabeling");
  gen->add_option("-o,--output", o.output, "Graph file (stdout when absent)");

  auto* tour = app.add_subcommand("tour", "Compute a tour and print Tour JSON");
  tour->add_option("graph", o.graph_path, "Graph file")->required();
  tour->add_option("--algo", o.algo, "rand, det or mst2")->check(CLI::IsMember({"rand", "det", "mst2"}));
  tour->add_option("--seed", o.tour_seed, "Seed (required for rand)");
  tour->add_flag("--exact-cost", o.exact_cost, "Evaluate the shortest-path tour cost");
  tour->add_flag("--omit-timing", o.omit_timing, "Write wall_ms as null so output is byte-stable");
  tour->add_option("-o,--output", o.output, "Tour JSON file (stdout when absent)");

  auto* verify = app.add_subcommand("verify", "Check a Tour JSON against its graph");
  verify->add_option("graph", o.graph_path, "Graph file")->required();
  verify->add_option("tour", o.tour_path, "Tour JSON file")->required();

  auto* bench = app.add_subcommand("bench", "Run a sweep and write CSV");
  bench->add_option("-n", o.bench_n, "Vertex counts of random instances")->delimiter(',');
  bench->add_option("-k", o.bench_k, "Degrees of random instances")->delimiter(',');
  bench->add_option("--graph", o.bench_graphs, "Graph files to include");
  bench->add_option("--seeds", o.bench_seeds, "Seeds per instance");
  bench->add_option("--seed-base", o.seed_base, "First seed");
  bench->add_option("--algos", o.bench_algos, "Algorithms")->delimiter(',');
  bench->add_flag("--exact-cost", o.exact_cost, "Evaluate exact tour costs");
  bench->add_flag("--optimum", o.bench_optimum, "Held-Karp optimum when n <= 15");
  bench->add_option("-j,--jobs", o.jobs, "Concurrent runs")->check(CLI::Range(1u, 256u));
  bench->add_option("-o,--output", o.output, "CSV file (stdout when absent)");
  bench->footer(std::string("CSV columns: ") + kCsvHeader +
                "\nOne row per (instance, algo, seed) sorted by that key, then one row per (instance group, algo) "
                "with seed=median holding column medians. Random instance i uses seed i for both the graph and "
                "the algorithm. Failed runs leave the result columns empty.");

  auto* oracle = app.add_subcommand("oracle", "Exact oracles and bound formulas");
  oracle->require_subcommand(1);
  auto* hk = oracle->add_subcommand("held-karp", "Exact TSP optimum (n <= 15)");
  hk->add_option("graph", o.graph_path, "Graph file")->required();
  auto* covers = oracle->add_subcommand("covers", "Cycle-cover census of the bidirected graph against the counting bound");
  covers->add_option("graph", o.graph_path, "Graph file")->required();
  covers->add_option("--reduce", o.reduce_k, "Reduce to this degree first");
  auto* lemma4 = oracle->add_subcommand("lemma4", "C(n,r) * k^(n-r)");
  lemma4->add_option("-n", o.n)->required();
  lemma4->add_option("-k", o.k)->required();
  lemma4->add_option("-r", o.r)->required();
  auto* flog = oracle->add_subcommand("f-log", "Natural log of the per-coloring probability cap");
  flog->add_option("-n", o.n)->required();
  flog->add_option("-k", o.k)->required();
  auto* threshold = oracle->add_subcommand("threshold", "3.5 n / ln k and whether it is vacuous");
  threshold->add_option("-n", o.n)->required();
  threshold->add_option("-k", o.k)->required()->check(CLI::Range(2u, 1u << 30));
  auto* dist = oracle->add_subcommand("distribution", "Empirical coloring distribution on a tiny graph");
  dist->add_option("graph", o.graph_path, "Graph file")->required();
  dist->add_option("--runs", o.runs, "Number of seeded runs");
  dist->add_option("--seed", o.seed, "Master seed");
  dist->add_option("--reduce", o.reduce_k, "Color at this degree (default: largest power of two)");
  dist->add_option("--flips", o.flips, "cycle or component")->check(CLI::IsMember({"cycle", "component"}));
  auto* corpus = oracle->add_subcommand("corpus", "Write the standard instance corpus");
  corpus->add_option("-o,--output", o.output, "Directory")->required();
  corpus->add_flag("--no-oracles", o.no_oracles, "Skip the oracle reports");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*tour) return cmd_tour(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*bench) return cmd_bench(o, out, err);
    if (*hk) return cmd_held_karp(o, out);
    if (*covers) return cmd_covers(o, out);
    if (*lemma4) return cmd_lemma4(o, out);
    if (*flog) return cmd_f_log(o, out);
    if (*threshold) return cmd_threshold(o, out);
    if (*dist) return cmd_distribution(o, out);
    if (*corpus) return cmd_corpus(o, out);
  } catch (const Error& e) {
    const char* kind = e.kind() == ErrorKind::kInput ? "input" : e.kind() == ErrorKind::kPrecondition ? "precondition" : "internal";
    report_error(o.json, err, kind, e.what());
    return exit_code_of(e.kind());
  } catch (const std::exception& e) {
    report_error(o.json, err, "internal", e.what());
    return kInternalError;
  }
  return kInputError;
}

}  // namespace regtsp::cli
