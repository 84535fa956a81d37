#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "regtsp/graph.hpp"
#include "regtsp/tour.hpp"

namespace regtsp::cli {

/// Column order of the bench CSV. Fixed; tools parse it by position.
inline constexpr const char* kCsvHeader =
    "instance,algo,seed,n,K,k_used,d,r,m,cost_bound,exact_cost,optimum,"
    "wall_ms_decompose,wall_ms_color,wall_ms_assemble,wall_ms_total";

struct RunRecord {
  std::string instance;
  /// Summary grouping: random instances of one (n, K) share a group.
  std::string group;
  std::string algo;
  std::uint64_t seed = 0;
  Vertex n = 0;
  unsigned k_input = 0;
  unsigned k_used = 0;
  std::optional<unsigned> d;
  std::size_t r = 0;
  std::optional<std::size_t> m;
  std::uint64_t cost_bound = 0;
  std::optional<std::uint64_t> exact_cost;
  std::optional<std::uint64_t> optimum;
  PhaseTimings timings;
  /// Set when the run threw; the numeric columns are then left empty.
  std::optional<std::string> error;
};

/// Median of every numeric column over the runs of one (instance group, algo).
struct SummaryRow {
  std::string instance;
  std::string algo;
  Vertex n = 0;
  unsigned k_input = 0;
  unsigned k_used = 0;
  std::optional<double> d, r, m, cost_bound, exact_cost, optimum;
  PhaseTimings timings;
  std::size_t runs = 0;
};

struct SweepSpec {
  /// Random regular instances for every (n, K) pair; one graph per seed.
  std::vector<Vertex> ns;
  std::vector<unsigned> ks;
  /// Graph files, each run once per seed.
  std::vector<std::string> graph_files;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algos{"rand", "det", "mst2"};
  bool exact_cost = false;
  /// Held-Karp optimum for instances small enough.
  bool optimum = false;
  unsigned jobs = 1;
};

/// A random connected regular(K) graph; K = 2 gives a randomly relabeled
/// cycle.
Graph random_instance(Vertex n, unsigned k, std::uint64_t seed);

/// Id of a generated instance, e.g. random_n1000_k16_s3.
std::string random_instance_id(Vertex n, unsigned k, std::uint64_t seed);

/// One run; exceptions are caught into RunRecord::error.
RunRecord run_one(const Graph& g, const std::string& instance, const std::string& group, const std::string& algo,
                  std::uint64_t seed,
                  bool exact_cost, std::optional<std::uint64_t> optimum);

/// All runs of the sweep, sorted by (instance, algo, seed).
std::vector<RunRecord> run_sweep(const SweepSpec& spec);

/// One row per (instance group, algo), in first-appearance order. Random
/// instances group by (n, K) across seeds; file instances by file.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records, const std::vector<SummaryRow>& summary);

double median(std::vector<double> values);

}  // namespace regtsp::cli
