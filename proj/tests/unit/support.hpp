#pragma once

// Checks written independently of the library code they audit.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <span>
#include <vector>

#include "regtsp/cycle_cover_coloring.hpp"
#include "regtsp/graph.hpp"
#include "regtsp/rng.hpp"

namespace regtsp::test {

/// One out-arc and one in-arc per vertex among the arcs with the given ids.
inline bool is_cycle_cover(const Digraph& d, std::span<const ArcId> ids) {
  std::vector<int> out(d.num_vertices(), 0), in(d.num_vertices(), 0);
  for (ArcId id : ids) {
    const auto index = d.index_of(id);
    if (!index) return false;
    ++out[d.arc(*index).tail];
    ++in[d.arc(*index).head];
  }
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    if (out[v] != 1 || in[v] != 1) return false;
  }
  return true;
}

/// Every color class, read off the raw color vector, is a cycle cover.
inline bool every_class_is_cover(const Digraph& d, std::span<const Color> colors, unsigned k) {
  for (Color c = 1; c <= k; ++c) {
    std::vector<ArcId> ids;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] == c) ids.push_back(d.id(i));
    }
    if (!is_cycle_cover(d, ids)) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> in_out_degrees(const Digraph& d, bool out) {
  std::vector<std::uint32_t> deg(d.num_vertices(), 0);
  for (const Arc& a : d.arcs()) ++deg[out ? a.tail : a.head];
  return deg;
}

inline bool is_regular(const Digraph& d, unsigned k) {
  for (bool out : {false, true}) {
    for (auto x : in_out_degrees(d, out)) {
      if (x != k) return false;
    }
  }
  return true;
}

/// Orbit count of a successor array by marking.
inline std::size_t orbits(const std::vector<Vertex>& succ) {
  std::vector<char> seen(succ.size(), 0);
  std::size_t count = 0;
  for (Vertex v = 0; v < succ.size(); ++v) {
    if (seen[v]) continue;
    ++count;
    for (Vertex u = v; !seen[u]; u = succ[u]) seen[u] = 1;
  }
  return count;
}

/// Cycle-cover census by choosing one out-arc per vertex (multiplicities
/// kept) and keeping the choices whose heads are all distinct.
inline std::map<std::size_t, std::size_t> brute_force_census(const Digraph& d) {
  const Vertex n = d.num_vertices();
  std::map<std::size_t, std::size_t> census;
  std::vector<Vertex> succ(n);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, Vertex v) -> void {
    if (v == n) {
      ++census[orbits(succ)];
      return;
    }
    for (auto index : d.out_arcs(v)) {
      const Vertex h = d.arc(index).head;
      if (used[h]) continue;
      used[h] = 1;
      succ[v] = h;
      self(self, v + 1);
      used[h] = 0;
    }
  };
  rec(rec, 0);
  return census;
}

/// All-pairs BFS distances.
inline std::vector<std::vector<std::uint32_t>> distances(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, UINT32_MAX));
  for (Vertex s = 0; s < n; ++s) {
    std::queue<Vertex> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (const auto& inc : g.neighbors(u)) {
        if (dist[s][inc.neighbor] == UINT32_MAX) {
          dist[s][inc.neighbor] = dist[s][u] + 1;
          q.push(inc.neighbor);
        }
      }
    }
  }
  return dist;
}

/// Exact optimum by trying every order that starts at vertex 0.
inline std::uint64_t permutation_search_opt(const Graph& g) {
  const auto dist = distances(g);
  std::vector<Vertex> rest(g.num_vertices() - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  std::uint64_t best = UINT64_MAX;
  do {
    std::uint64_t cost = dist[0][rest.front()] + dist[rest.back()][0];
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) cost += dist[rest[i]][rest[i + 1]];
    best = std::min(best, cost);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

/// Tour cost from all-pairs distances.
inline std::uint64_t tour_cost(const Graph& g, std::span<const Vertex> order) {
  const auto dist = distances(g);
  std::uint64_t cost = 0;
  for (std::size_t i = 0; i < order.size(); ++i) cost += dist[order[i]][order[(i + 1) % order.size()]];
  return cost;
}

inline bool is_permutation_of_n(std::span<const Vertex> order, Vertex n) {
  if (order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

/// Literal depth-first form of the coloring: split, recurse, fuse, then for
/// each color split its 2-regular class into alternation sides and recolor
/// one side per bit. Colors are per local arc index of d.
inline std::vector<Color> reference_coloring(const Digraph& d, Rng& rng, FlipGranularity flips) {
  const unsigned k = *d.regular_degree();
  if (k == 1) return std::vector<Color>(d.num_arcs(), 1);
  const Digraph h = split_vertices(d, rng);
  std::vector<Color> color = reference_coloring(h, rng, flips);
  const Digraph fused = fuse_vertices(h);
  const unsigned half = k / 2;
  for (Color c = 1; c <= half; ++c) {
    std::vector<ArcId> ids;
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < fused.num_arcs(); ++i) {
      if (color[i] != c) continue;
      ids.push_back(fused.id(i));
      arcs.push_back(fused.arc(i));
    }
    const Digraph gc = Digraph::from_arcs(fused.num_vertices(), ids, arcs);
    const TwoRegularSplit split = split_two_regular(gc);

    std::vector<int> bit_of_cycle(split.cycles.size());
    if (flips == FlipGranularity::kPerAlternatingCycle) {
      for (auto& b : bit_of_cycle) b = rng.fair_bit() ? 1 : 0;
    } else {
      // Components of the class by union-find over its arcs.
      std::vector<Vertex> parent(gc.num_vertices());
      std::iota(parent.begin(), parent.end(), Vertex{0});
      auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const Arc& a : gc.arcs()) parent[find(a.tail)] = find(a.head);
      std::map<Vertex, ArcId> min_arc_of;
      for (std::size_t i = 0; i < gc.num_arcs(); ++i) {
        const Vertex root = find(gc.arc(i).tail);
        auto [it, inserted] = min_arc_of.try_emplace(root, gc.id(i));
        if (!inserted) it->second = std::min(it->second, gc.id(i));
      }
      std::vector<std::pair<ArcId, Vertex>> order;
      for (auto [root, id] : min_arc_of) order.push_back({id, root});
      std::sort(order.begin(), order.end());
      std::map<Vertex, int> comp_bit;
      for (auto [id, root] : order) comp_bit[root] = rng.fair_bit() ? 1 : 0;
      for (std::size_t x = 0; x < split.cycles.size(); ++x) {
        const auto index = *gc.index_of(split.cycles[x].front());
        bit_of_cycle[x] = comp_bit[find(gc.arc(index).tail)];
      }
    }
    for (std::size_t x = 0; x < split.cycles.size(); ++x) {
      const auto& cycle = split.cycles[x];
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        if (static_cast<int>(t % 2) == bit_of_cycle[x]) color[*d.index_of(cycle[t])] = c + half;
      }
    }
  }
  return color;
}

}  // namespace regtsp::test
