#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "regtsp/graph.hpp"
#include "regtsp/regular_decompose.hpp"
#include "regtsp/rng.hpp"

namespace regtsp {

/// Colors are 1..k.
using Color = std::uint32_t;

/// How many fair bits the recoloring step draws per color class.
enum class FlipGranularity {
  /// One bit per alternating cycle of the class (default).
  kPerAlternatingCycle,
  /// One bit per connected component of the class.
  kPerComponent,
};

struct ColoringOptions {
  FlipGranularity flips = FlipGranularity::kPerAlternatingCycle;
  /// Check after every recursion level that each color class is a cycle
  /// cover of the working digraph; throws Error(kInternal) otherwise.
  bool audit_levels = false;
};

/// Partition of a regular(k) digraph's arcs into k cycle covers. Colors are
/// stored per local arc index of the digraph the coloring was computed on.
class CycleCoverColoring {
 public:
  CycleCoverColoring() = default;
  CycleCoverColoring(unsigned k, std::vector<Color> colors) : k_(k), colors_(std::move(colors)) {}

  unsigned k() const noexcept { return k_; }
  std::span<const Color> colors() const noexcept { return colors_; }

  /// Arc ids of one color class.
  IdSet class_arcs(const Digraph& d, Color c) const;
  /// Validated cycle cover of one color class.
  CycleCover cover(const Digraph& d, Color c) const;
  /// Cycle count of every class; entry c-1 belongs to color c. Assumes the
  /// coloring is valid.
  std::vector<std::size_t> cycle_counts(const Digraph& d) const;
  /// Number of classes having each cycle count.
  std::map<std::size_t, std::size_t> cycle_count_histogram(const Digraph& d) const;

  friend bool operator==(const CycleCoverColoring&, const CycleCoverColoring&) = default;

 private:
  unsigned k_ = 0;
  std::vector<Color> colors_;
};

/// Throws Error(kInternal) unless every class of `col` is a cycle cover of `d`.
void validate_coloring(const Digraph& d, const CycleCoverColoring& col);

/// Splits every vertex v into 2v and 2v+1, sending a uniformly random half of
/// v's in-arcs and (independently) half of its out-arcs to 2v. Arc ids are
/// unchanged. Draw order: vertices ascending, in-arcs before out-arcs, each
/// list in ascending arc order shuffled by a partial Fisher-Yates pass.
/// Requires even regular degree.
Digraph split_vertices(const Digraph& d, Rng& rng);

/// Maps vertex v of a split digraph back to v / 2; arc ids unchanged.
Digraph fuse_vertices(const Digraph& h);

/// The two alternation classes of a regular(2) digraph's bipartite
/// encoding. Each cycle is listed starting at its smallest arc id and in
/// walk order; even positions form S, odd positions form S'.
struct TwoRegularSplit {
  IdSet s;
  IdSet s_prime;
  /// Ordered by smallest arc id.
  std::vector<std::vector<ArcId>> cycles;
};

/// Both S and S' are cycle covers. Throws Error(kInput) unless `g` is
/// regular(2).
TwoRegularSplit split_two_regular(const Digraph& g);

/// Random cycle cover coloring of a regular(k) digraph, k a power of two.
///
/// Runs the split/recurse/fuse/recolor scheme level by level: all vertex
/// splits top-down, then the recoloring passes bottom-up, which is the same
/// draw sequence a depth-first recursion produces. Recoloring draws its fair
/// bits colors ascending, and within a color in ascending order of the
/// smallest arc of each alternating cycle (or component).
CycleCoverColoring rand_cycle_cover_coloring(const Digraph& d, Rng& rng, const ColoringOptions& options = {});

struct BestCover {
  Color color;
  CycleCover cover;
};

/// Class with the fewest cycles; ties go to the lowest color.
BestCover best_cover(const Digraph& d, const CycleCoverColoring& col);

}  // namespace regtsp
