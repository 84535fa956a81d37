#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regtsp/error.hpp"

namespace regtsp {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using ArcId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Raised by Graph::from_edges; carries the position of the offending edge so
/// that the file parser can report a line number.
class EdgeError : public Error {
 public:
  EdgeError(std::size_t edge_index, const std::string& what)
      : Error(ErrorKind::kInput, what), edge_index_(edge_index) {}

  std::size_t edge_index() const noexcept { return edge_index_; }

 private:
  std::size_t edge_index_;
};

/// Simple undirected graph on dense vertex ids 0..n-1.
///
/// Edge ids are the positions in the edge sequence passed at construction.
/// Each vertex's incidence list is sorted by neighbor id, which fixes the
/// iteration order every deterministic algorithm in this library relies on.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws EdgeError on self-loops, duplicate edges and
  /// out-of-range endpoints.
  static Graph from_edges(Vertex n, std::vector<Edge> edges);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Incidence> neighbors(Vertex v) const noexcept {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Common degree when every vertex has the same degree.
  std::optional<unsigned> regular_degree() const noexcept { return regular_degree_; }

  bool is_connected() const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
  std::optional<unsigned> regular_degree_;
};

struct Arc {
  Vertex tail;
  Vertex head;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed multigraph (parallel arcs allowed, self-loops forbidden).
///
/// Arcs are addressed two ways: by their stable ArcId, which survives
/// subgraph extraction and vertex splitting/fusing, and by a local index
/// 0..num_arcs()-1 into this particular digraph. Ids are kept strictly
/// increasing so that local index order equals id order. Adjacency lists hold
/// local indices in ascending order.
class Digraph {
 public:
  Digraph() = default;

  /// Arcs get ids 0..arcs.size()-1.
  static Digraph from_arcs(Vertex n, std::vector<Arc> arcs);
  /// `ids` must be strictly increasing and the same length as `arcs`.
  static Digraph from_arcs(Vertex n, std::vector<ArcId> ids, std::vector<Arc> arcs);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_arcs() const noexcept { return arcs_.size(); }

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::span<const ArcId> ids() const noexcept { return ids_; }
  const Arc& arc(std::size_t index) const { return arcs_[index]; }
  ArcId id(std::size_t index) const { return ids_[index]; }

  /// Local index of an arc id, if present.
  std::optional<std::size_t> index_of(ArcId id) const;

  std::span<const std::uint32_t> out_arcs(Vertex v) const noexcept {
    return {out_.data() + out_offsets_[v], out_.data() + out_offsets_[v + 1]};
  }
  std::span<const std::uint32_t> in_arcs(Vertex v) const noexcept {
    return {in_.data() + in_offsets_[v], in_.data() + in_offsets_[v + 1]};
  }

  /// Common in- and out-degree when all in- and out-degrees agree.
  std::optional<unsigned> regular_degree() const noexcept { return regular_degree_; }

 private:
  Vertex n_ = 0;
  std::vector<ArcId> ids_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_offsets_{0};
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<std::uint32_t> in_;
  std::optional<unsigned> regular_degree_;
};

/// Arc 2e is edge e traversed u->v, arc 2e+1 is v->u (for edge e = {u, v}).
Digraph bidirect(const Graph& g);

constexpr EdgeId source_edge_of(ArcId arc) noexcept { return arc / 2; }

/// A set of vertex-disjoint directed cycles covering every vertex.
class CycleCover {
 public:
  std::span<const ArcId> arc_ids() const noexcept { return arc_ids_; }
  std::span<const Vertex> successor() const noexcept { return successor_; }
  /// Cycle index of each vertex, numbered by first appearance in vertex order.
  std::span<const std::uint32_t> cycle_of() const noexcept { return cycle_of_; }
  std::size_t num_cycles() const noexcept { return num_cycles_; }

  /// Vertex sets of the cycles, each listed in successor order starting at
  /// its smallest vertex.
  std::vector<std::vector<Vertex>> cycles() const;

 private:
  friend CycleCover cover_from_arcs(const Digraph& d, std::span<const ArcId> arc_ids);

  std::vector<ArcId> arc_ids_;
  std::vector<Vertex> successor_;
  std::vector<std::uint32_t> cycle_of_;
  std::size_t num_cycles_ = 0;
};

/// Validates that `arc_ids` picks exactly one out-arc and one in-arc at every
/// vertex of `d`. Throws Error(kInternal) otherwise.
CycleCover cover_from_arcs(const Digraph& d, std::span<const ArcId> arc_ids);

/// Number of orbits of a fixed-point-free permutation given as a successor
/// array. No validation.
std::size_t count_cycles(std::span<const Vertex> successor);

// Graph file IO: "n m" header, then m lines "u v"; '#' starts a comment line.

Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
/// Canonical form: edges normalized to u < v, sorted ascending.
std::string format_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace regtsp
