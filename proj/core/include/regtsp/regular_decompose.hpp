#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "regtsp/graph.hpp"

namespace regtsp {

/// Sorted ascending set of stable edge (or arc) ids.
using IdSet = std::vector<std::uint32_t>;

struct BipartiteEdge {
  Vertex left;
  Vertex right;
};

/// Bipartite multigraph with left vertices 0..n_left-1 and right vertices
/// 0..n_right-1. Same id discipline as Digraph: stable ids, strictly
/// increasing, local index order equals id order.
class BipartiteMultigraph {
 public:
  BipartiteMultigraph() = default;

  static BipartiteMultigraph from_edges(Vertex n_left, Vertex n_right, std::vector<std::uint32_t> ids,
                                        std::vector<BipartiteEdge> edges);

  Vertex n_left() const noexcept { return n_left_; }
  Vertex n_right() const noexcept { return n_right_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const BipartiteEdge> edges() const noexcept { return edges_; }
  std::span<const std::uint32_t> ids() const noexcept { return ids_; }

  /// Local indices of edges at a vertex. Vertices are numbered left first:
  /// left v is v, right v is n_left + v.
  std::span<const std::uint32_t> incident(Vertex unified) const noexcept {
    return {incidence_.data() + offsets_[unified], incidence_.data() + offsets_[unified + 1]};
  }
  std::size_t degree(Vertex unified) const noexcept { return offsets_[unified + 1] - offsets_[unified]; }

  /// Common degree when every vertex on both sides has the same degree.
  std::optional<unsigned> regular_degree() const noexcept { return regular_degree_; }

  /// Edges whose ids are in `keep` (sorted ascending).
  BipartiteMultigraph subgraph(std::span<const std::uint32_t> keep) const;

 private:
  Vertex n_left_ = 0;
  Vertex n_right_ = 0;
  std::vector<std::uint32_t> ids_;
  std::vector<BipartiteEdge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> incidence_;
  std::optional<unsigned> regular_degree_;
};

/// One edge (u_L, v_R) per arc (u, v); edge id = arc id.
BipartiteMultigraph bipartite_encode(const Digraph& d);

/// Splits an all-even-degree multigraph into two halves by alternating along
/// an Euler circuit of every component. Each vertex keeps exactly half of its
/// degree on each side. Throws Error(kInput) on an odd-degree vertex.
std::pair<IdSet, IdSet> euler_split(const BipartiteMultigraph& b);

/// A perfect matching found by Hopcroft-Karp augmentation, or nullopt when
/// none exists (the input was not regular).
std::optional<IdSet> peel_matching(const BipartiteMultigraph& b);

/// Partitions a regular(k) bipartite multigraph into k perfect matchings.
/// Even degree: Euler split and recurse on both halves (first half's
/// matchings first). Odd degree: peel one matching, then recurse on the rest.
std::vector<IdSet> decompose_matchings(const BipartiteMultigraph& b);

/// A regular(k_target) sub-digraph of a regular(k) digraph: the union of the
/// first k_target matchings of the bipartite encoding's decomposition.
/// Throws Error(kInput) when k_target is outside 1..k.
Digraph regular_subgraph(const Digraph& d, unsigned k_target);

}  // namespace regtsp
