#include "regtsp/generators.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "regtsp/rng.hpp"

namespace regtsp {

namespace {

constexpr int kMaxAttempts = 1000;
constexpr int kMaxSwitchTries = 100000;

Graph canonical_graph(Vertex n, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  return Graph::from_edges(n, std::move(edges));
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[static_cast<std::size_t>(rng.below(i))]);
  }
}

// Removes loops and parallel edges from a pairing by random double-edge
// switches: a bad pair {u,v} and a random simple edge {x,y} become {u,x} and
// {v,y}. Returns false if some defect cannot be switched away.
bool repair_pairing(Vertex n, std::vector<Edge>& edges, Rng& rng) {
  auto key = [n](Vertex a, Vertex b) -> std::uint64_t {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };
  absl::flat_hash_map<std::uint64_t, std::uint32_t> multiplicity;
  multiplicity.reserve(edges.size());
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u == e.v || ++multiplicity[key(e.u, e.v)] > 1) bad.push_back(i);
  }
  auto count = [&](std::uint64_t k) -> std::uint32_t {
    auto it = multiplicity.find(k);
    return it == multiplicity.end() ? 0 : it->second;
  };
  auto decrement = [&](std::uint64_t k) {
    auto it = multiplicity.find(k);
    if (--it->second == 0) multiplicity.erase(it);
  };

  for (std::size_t i : bad) {
    bool fixed = false;
    for (int attempt = 0; attempt < kMaxSwitchTries && !fixed; ++attempt) {
      const auto j = static_cast<std::size_t>(rng.below(edges.size()));
      Vertex x = edges[j].u;
      Vertex y = edges[j].v;
      if (rng.fair_bit()) std::swap(x, y);
      if (j == i || x == y || count(key(x, y)) != 1) continue;
      const Vertex u = edges[i].u;
      const Vertex v = edges[i].v;
      if (u == x || v == y) continue;
      const std::uint64_t first = key(u, x);
      const std::uint64_t second = key(v, y);
      if (first == second || count(first) != 0 || count(second) != 0) continue;
      if (u != v) decrement(key(u, v));
      decrement(key(x, y));
      multiplicity[first] = 1;
      multiplicity[second] = 1;
      edges[i] = {u, x};
      edges[j] = {v, y};
      fixed = true;
    }
    if (!fixed) return false;
  }
  return true;
}

// One pairing-model draw of a simple k-regular multigraph-free edge list,
// or nullopt when this draw is rejected. Small k rejects the whole pairing on
// any loop or parallel pair; larger k repairs it by switches.
std::optional<std::vector<Edge>> sample_simple(Vertex n, unsigned k, Rng& rng) {
  if (k == 0) return std::vector<Edge>{};
  // Expected number of loops plus parallel pairs is about (k^2 - 1) / 4.
  const bool reject_whole = (static_cast<std::uint64_t>(k) * k - 1) <= 16;
  std::vector<Vertex> stubs(static_cast<std::size_t>(n) * k);
  for (Vertex v = 0; v < n; ++v) std::fill_n(stubs.begin() + static_cast<std::ptrdiff_t>(v) * k, k, v);
  shuffle(stubs, rng);
  std::vector<Edge> edges(stubs.size() / 2);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
  if (reject_whole) {
    absl::flat_hash_set<std::uint64_t> seen;
    for (const Edge& e : edges) {
      const Vertex a = std::min(e.u, e.v);
      const Vertex b = std::max(e.u, e.v);
      if (a == b || !seen.insert(static_cast<std::uint64_t>(a) * n + b).second) return std::nullopt;
    }
    return edges;
  }
  if (!repair_pairing(n, edges, rng)) return std::nullopt;
  return edges;
}

}  // namespace

Graph gen_random_regular(Vertex n, unsigned k, std::uint64_t seed) {
  if (k < 3 || k >= n) {
    fail(ErrorKind::kInput, "gen_random_regular: need 3 <= k < n (n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
  }
  if ((static_cast<std::uint64_t>(n) * k) % 2 != 0) {
    fail(ErrorKind::kInput, "gen_random_regular: n*k = " + std::to_string(static_cast<std::uint64_t>(n) * k) +
                                " is odd; no k-regular graph exists");
  }

  Rng rng(seed);
  // Dense degrees are sampled as the complement of a sparse regular graph.
  // With k >= n/2 any two vertices share a neighbor or are adjacent, so the
  // complement is connected.
  if (2 * static_cast<std::uint64_t>(k) >= n) {
    const unsigned j = n - 1 - k;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      auto sparse = sample_simple(n, j, rng);
      if (!sparse) continue;
      std::vector<std::uint8_t> adjacent(static_cast<std::size_t>(n) * n, 0);
      for (const Edge& e : *sparse) {
        adjacent[static_cast<std::size_t>(e.u) * n + e.v] = 1;
        adjacent[static_cast<std::size_t>(e.v) * n + e.u] = 1;
      }
      std::vector<Edge> edges;
      edges.reserve(static_cast<std::size_t>(n) * k / 2);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (!adjacent[static_cast<std::size_t>(u) * n + v]) edges.push_back({u, v});
        }
      }
      return canonical_graph(n, std::move(edges));
    }
  } else {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      auto edges = sample_simple(n, k, rng);
      if (!edges) continue;
      Graph g = canonical_graph(n, std::move(*edges));
      if (g.is_connected()) return g;
    }
  }
  fail(ErrorKind::kInput, "gen_random_regular: no simple connected sample after " + std::to_string(kMaxAttempts) +
                              " attempts (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
}

Graph cycle_graph(Vertex n) {
  if (n < 3) fail(ErrorKind::kInput, "cycle: need n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return canonical_graph(n, std::move(edges));
}

Graph complete_graph(Vertex q) {
  if (q < 2) fail(ErrorKind::kInput, "complete: need q >= 2");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < q; ++u) {
    for (Vertex v = u + 1; v < q; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(q, std::move(edges));
}

Graph hypercube(unsigned dim) {
  if (dim < 1 || dim > 24) fail(ErrorKind::kInput, "hypercube: need 1 <= dim <= 24");
  const Vertex n = Vertex{1} << dim;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (unsigned b = 0; b < dim; ++b) {
      const Vertex w = v ^ (Vertex{1} << b);
      if (v < w) edges.push_back({v, w});
    }
  }
  return canonical_graph(n, std::move(edges));
}

Graph circulant(Vertex n, std::span<const unsigned> offsets) {
  if (n < 3) fail(ErrorKind::kInput, "circulant: need n >= 3");
  if (offsets.empty()) fail(ErrorKind::kInput, "circulant: need at least one offset");
  std::set<unsigned> distinct;
  for (unsigned o : offsets) {
    if (o < 1 || o > n / 2) fail(ErrorKind::kInput, "circulant: offset " + std::to_string(o) + " outside 1..n/2");
    if (!distinct.insert(o).second) fail(ErrorKind::kInput, "circulant: repeated offset " + std::to_string(o));
  }
  std::vector<Edge> edges;
  for (unsigned o : distinct) {
    const bool diameter = 2 * o == n;
    for (Vertex i = 0; i < (diameter ? n / 2 : n); ++i) edges.push_back({i, (i + o) % n});
  }
  return canonical_graph(n, std::move(edges));
}

Graph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return canonical_graph(10, std::move(edges));
}

Graph gen_named(std::string_view family, std::span<const unsigned> params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      fail(ErrorKind::kInput, std::string(family) + ": expected " + std::to_string(count) + " parameter(s)");
    }
  };
  if (family == "cycle") {
    need(1);
    return cycle_graph(params[0]);
  }
  if (family == "complete") {
    need(1);
    return complete_graph(params[0]);
  }
  if (family == "hypercube") {
    need(1);
    return hypercube(params[0]);
  }
  if (family == "petersen") {
    need(0);
    return petersen();
  }
  if (family == "circulant") {
    if (params.size() < 2) fail(ErrorKind::kInput, "circulant: expected n and at least one offset");
    return circulant(params[0], params.subspan(1));
  }
  fail(ErrorKind::kInput, "unknown graph family '" + std::string(family) + "'");
}

Graph relabel_randomly(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vertex> label(g.num_vertices());
  std::iota(label.begin(), label.end(), Vertex{0});
  shuffle(label, rng);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({label[e.u], label[e.v]});
  return canonical_graph(g.num_vertices(), std::move(edges));
}

}  // namespace regtsp
