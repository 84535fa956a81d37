#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regtsp/cycle_cover_coloring.hpp"
#include "regtsp/graph.hpp"

namespace regtsp {

using BigInt = boost::multiprecision::cpp_int;

/// Constants of the cycle-count analysis.
struct AnalysisConstants {
  static constexpr double kGamma = 3.5;
};

inline constexpr Vertex kHeldKarpMaxVertices = 15;
inline constexpr Vertex kEnumerationMaxVertices = 12;

/// Exact optimum of the graph's shortest-path TSP by subset dynamic
/// programming. Requires g connected and n <= kHeldKarpMaxVertices.
std::uint64_t held_karp_opt(const Graph& g);

/// Every cycle cover of d (one out-arc and one in-arc per vertex). Parallel
/// arcs give distinct covers. Requires n <= kEnumerationMaxVertices.
std::vector<CycleCover> enumerate_cycle_covers(const Digraph& d);

/// Number of covers per cycle count.
std::map<std::size_t, std::size_t> count_covers_by_cycles(const std::vector<CycleCover>& covers);

/// Same census as enumerating and counting, without materializing the
/// covers. Requires n <= kEnumerationMaxVertices.
std::map<std::size_t, std::size_t> cycle_cover_census(const Digraph& d);

/// C(n, r) * k^(n - r), exact. Requires 1 <= r <= n/2.
BigInt lemma4_bound(unsigned n, unsigned k, unsigned r);

/// Natural log of [k^k / (k!)^2]^n / 2^(k-1), the cap on the probability of
/// any single coloring being produced.
double f_log(unsigned n, unsigned k);

struct CycleThreshold {
  double value;
  /// value >= n/2: every cycle cover meets it.
  bool vacuous;
};

/// gamma * n / ln k with gamma = 3.5. Requires k >= 2.
CycleThreshold cycle_threshold(std::uint64_t n, unsigned k);

struct DistributionReport {
  std::size_t runs = 0;
  /// Occurrences of each distinct coloring (keyed by color vector).
  std::map<std::vector<Color>, std::size_t> counts;
  double max_frequency = 0;
  double f = 0;
  /// f + 4 sqrt(f / runs).
  double bound = 0;
  bool within_bound = false;
};

/// Runs the coloring `runs` times with seeds derived from `seed` and tallies
/// the outputs. Requires n <= 6, k <= 4, runs >= 10^4.
DistributionReport coloring_distribution_test(const Digraph& d, std::size_t runs, std::uint64_t seed,
                                              const ColoringOptions& options = {});

}  // namespace regtsp
