#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regtsp/cycle_cover_coloring.hpp"
#include "regtsp/graph.hpp"

namespace regtsp {

struct PhaseTimings {
  double decompose_ms = 0;
  double color_ms = 0;
  double assemble_ms = 0;
  double total_ms = 0;
};

struct TourMeta {
  std::string algo;
  std::optional<std::uint64_t> seed;
  /// Degree of the input graph.
  unsigned k_input = 0;
  /// Degree the algorithm actually worked with.
  unsigned k_used = 0;
  /// Cycles joined by the spanning tree (cover cycles or long cycles).
  std::size_t num_cycles = 0;
  /// Long-cycle length threshold and leftover count (deterministic pipeline).
  std::optional<unsigned> d;
  std::optional<std::size_t> m;
  PhaseTimings timings;
};

/// A TSP tour of a graph under its shortest-path metric.
struct Tour {
  /// Every vertex exactly once; the tour closes back to order.front().
  std::vector<Vertex> order;
  /// Edge count of the Eulerian multigraph that was shortcut.
  std::uint64_t cost_bound = 0;
  std::optional<std::uint64_t> exact_cost;
  TourMeta meta;
};

struct MinorEdge {
  std::uint32_t node;
  EdgeId representative;
};

/// Graph minor obtained by contracting vertex sets. Node ids follow the order
/// of each node's smallest vertex, so vertex 0 always lands in node 0.
struct Minor {
  std::uint32_t num_nodes = 0;
  std::vector<std::uint32_t> node_of;
  /// Per node, its neighbor nodes in ascending order, each with one original
  /// edge joining the two (the same edge seen from both sides).
  std::vector<std::vector<MinorEdge>> adjacency;
};

/// Contracts each given vertex set to one node; vertices not listed become
/// singleton nodes. Throws Error(kInput) if the sets overlap.
Minor contract_components(const Graph& g, std::span<const std::vector<Vertex>> components);

/// Breadth-first spanning tree from node 0, neighbors in ascending order.
/// Returns the representative original edges. Throws Error(kPrecondition)
/// when the minor is disconnected.
std::vector<EdgeId> spanning_tree(const Minor& minor);

/// Eulerian circuit (from vertex 0) of cycle_edges plus two copies of each
/// tree edge, shortcut to first occurrences. `cycle_edges` may repeat an edge.
/// Throws Error(kInternal) on an odd degree or a vertex left unreached.
Tour euler_shortcut(const Graph& g, std::span<const EdgeId> cycle_edges, std::span<const EdgeId> tree_edges);

/// Sum of shortest-path distances between cyclically consecutive tour
/// vertices. Throws Error(kPrecondition) when a pair is disconnected and
/// Error(kInput) when the order names a vertex outside the graph.
std::uint64_t exact_tour_cost(const Graph& g, std::span<const Vertex> order);

/// Throws Error(kPrecondition) unless g is connected and regular; returns
/// the degree.
unsigned require_connected_regular(const Graph& g);

/// Tour for n <= 2: the vertex list, cost 0 (n = 1) or 2 (n = 2).
Tour trivial_tour(const Graph& g, std::string algo);

struct RandomizedOptions {
  ColoringOptions coloring;
  bool exact_cost = false;
};

/// The randomized pipeline with everything it produced along the way.
struct RandomizedRun {
  Tour tour;
  /// Bidirected, degree-reduced digraph the coloring was computed on.
  Digraph digraph;
  CycleCoverColoring coloring;
  Color chosen = 0;
};

/// Bidirect, reduce to degree 2^floor(log2 K), color, pick the class with the
/// fewest cycles, contract its cycles, double a spanning tree of the minor,
/// and shortcut. cost_bound = n + 2(r - 1).
RandomizedRun randomized_tsp_run(const Graph& g, std::uint64_t seed, const RandomizedOptions& options = {});

inline Tour randomized_tsp(const Graph& g, std::uint64_t seed, const RandomizedOptions& options = {}) {
  return randomized_tsp_run(g, seed, options).tour;
}

/// Baseline: doubled BFS spanning tree of g, cost_bound = 2(n - 1).
Tour doubled_tree_tsp(const Graph& g, bool exact_cost = false);

}  // namespace regtsp
