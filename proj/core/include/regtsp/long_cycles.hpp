#pragma once

#include <vector>

#include "regtsp/graph.hpp"
#include "regtsp/tour.hpp"

namespace regtsp {

struct LongCyclesOptions {
  /// When closing a cycle, use the largest qualifying path position (the
  /// shortest admissible cycle) instead of the smallest (the longest).
  bool prefer_largest_s = false;
  /// Assert the path and dead-end invariants on every step.
  bool audit = false;
};

struct LongCyclesResult {
  /// Vertex-disjoint cycles of g, each of length >= d, in path order.
  std::vector<std::vector<Vertex>> cycles;
  /// Vertices left out of every cycle, in the order they were dropped.
  std::vector<Vertex> leftover;
  unsigned d = 0;
};

/// Grows a path through the shrinking graph, cutting off a cycle of length
/// >= d whenever the endpoint is stuck but has a back neighbor at least d-1
/// positions back, and dropping the endpoint otherwise.
///
/// Requires g regular(k) with k >= 4 and 3 <= d <= k; throws Error(kInput)
/// or Error(kPrecondition) otherwise.
LongCyclesResult long_cycles(const Graph& g, unsigned d, const LongCyclesOptions& options = {});

/// ceil(2 sqrt(k)) capped at k.
unsigned long_cycle_threshold(unsigned k);

/// True when m <= n(k-2) / (2(k-d+1)), in exact integer arithmetic.
bool leftover_within_bound(std::uint64_t n, unsigned k, unsigned d, std::uint64_t m);

/// True when cost <= n(3/2 + 2/d + (d-3)/(2(k-d+1))), in exact integer
/// arithmetic.
bool cost_within_bound(std::uint64_t n, unsigned k, unsigned d, std::uint64_t cost);

struct DeterministicOptions {
  LongCyclesOptions long_cycles;
  bool exact_cost = false;
};

struct DeterministicRun {
  Tour tour;
  /// Empty for the k < 4 fallbacks.
  LongCyclesResult cycles;
};

/// Long cycles plus doubled spanning tree of the contracted graph. Degree 2
/// (a cycle) returns the cycle itself; degree 3 falls back to the doubled
/// spanning tree.
DeterministicRun deterministic_tsp_run(const Graph& g, const DeterministicOptions& options = {});

inline Tour deterministic_tsp(const Graph& g, const DeterministicOptions& options = {}) {
  return deterministic_tsp_run(g, options).tour;
}

namespace detail {

/// long_cycles without the degree and threshold preconditions, for exercising
/// the path-growing routine on small-degree graphs. Requires d >= 2.
LongCyclesResult long_cycles_unchecked(const Graph& g, unsigned d, const LongCyclesOptions& options);

}  // namespace detail

}  // namespace regtsp
