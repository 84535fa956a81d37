#include <algorithm>
#include <limits>
#include <string>

#include "regtsp/graph.hpp"

namespace regtsp {

namespace {
constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
}

CycleCover cover_from_arcs(const Digraph& d, std::span<const ArcId> arc_ids) {
  const Vertex n = d.num_vertices();
  std::vector<Vertex> successor(n, kNone);
  std::vector<char> has_in(n, 0);

  for (ArcId id : arc_ids) {
    const auto index = d.index_of(id);
    if (!index) fail(ErrorKind::kInternal, "arc " + std::to_string(id) + " is not in the digraph");
    const Arc& a = d.arc(*index);
    if (successor[a.tail] != kNone) {
      fail(ErrorKind::kInternal, "vertex " + std::to_string(a.tail) + " has two out-arcs in the set");
    }
    if (has_in[a.head]) {
      fail(ErrorKind::kInternal, "vertex " + std::to_string(a.head) + " has two in-arcs in the set");
    }
    successor[a.tail] = a.head;
    has_in[a.head] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (successor[v] == kNone) {
      fail(ErrorKind::kInternal, "vertex " + std::to_string(v) + " has no out-arc in the set");
    }
    if (!has_in[v]) {
      fail(ErrorKind::kInternal, "vertex " + std::to_string(v) + " has no in-arc in the set");
    }
  }

  CycleCover cover;
  cover.cycle_of_.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next_label = 0;
  for (Vertex start = 0; start < n; ++start) {
    if (cover.cycle_of_[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    Vertex v = start;
    do {
      cover.cycle_of_[v] = next_label;
      v = successor[v];
    } while (v != start);
    ++next_label;
  }
  cover.num_cycles_ = next_label;
  cover.successor_ = std::move(successor);
  cover.arc_ids_.assign(arc_ids.begin(), arc_ids.end());
  std::sort(cover.arc_ids_.begin(), cover.arc_ids_.end());
  return cover;
}

std::vector<std::vector<Vertex>> CycleCover::cycles() const {
  std::vector<std::vector<Vertex>> out(num_cycles_);
  for (Vertex start = 0; start < successor_.size(); ++start) {
    auto& cycle = out[cycle_of_[start]];
    if (!cycle.empty()) continue;
    Vertex v = start;
    do {
      cycle.push_back(v);
      v = successor_[v];
    } while (v != start);
  }
  return out;
}

std::size_t count_cycles(std::span<const Vertex> successor) {
  std::vector<char> seen(successor.size(), 0);
  std::size_t cycles = 0;
  for (Vertex start = 0; start < successor.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (Vertex v = start; !seen[v]; v = successor[v]) seen[v] = 1;
  }
  return cycles;
}

}  // namespace regtsp
