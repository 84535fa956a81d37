#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regtsp/graph.hpp"

namespace regtsp {

/// Simple connected k-regular graph from the pairing model.
///
/// Stubs are paired uniformly. When the expected number of loops and
/// parallel edges is small, defective pairings are rejected whole; for
/// larger degrees each defect is removed with a random double-edge switch
/// instead. Disconnected outcomes are always rejected. When 2k >= n the
/// graph is the complement of such a sample of degree n-1-k. Throws Error(kInput)
/// on bad parameters (3 <= k < n, n*k even) and when 1000 attempts fail.
/// Output edges are canonical (u < v, ascending).
Graph gen_random_regular(Vertex n, unsigned k, std::uint64_t seed);

Graph cycle_graph(Vertex n);
Graph complete_graph(Vertex q);
Graph hypercube(unsigned dim);
/// Vertex i adjacent to i +- o (mod n) for every offset o; 1 <= o <= n/2.
Graph circulant(Vertex n, std::span<const unsigned> offsets);
Graph petersen();

/// Dispatch by family name: "cycle" (n), "complete" (q), "hypercube" (dim),
/// "circulant" (n, offsets...), "petersen" (). Throws Error(kInput) on an
/// unknown family or bad parameters.
Graph gen_named(std::string_view family, std::span<const unsigned> params);

/// Applies a random relabeling of the vertices.
Graph relabel_randomly(const Graph& g, std::uint64_t seed);

}  // namespace regtsp
