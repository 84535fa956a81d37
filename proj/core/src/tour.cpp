#include "regtsp/tour.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <string>

#include "regtsp/regular_decompose.hpp"

namespace regtsp {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

Minor contract_components(const Graph& g, std::span<const std::vector<Vertex>> components) {
  const Vertex n = g.num_vertices();
  std::vector<std::uint32_t> provisional(n, kNil);
  for (std::uint32_t c = 0; c < components.size(); ++c) {
    for (Vertex v : components[c]) {
      if (v >= n) fail(ErrorKind::kInput, "contract_components: vertex " + std::to_string(v) + " out of range");
      if (provisional[v] != kNil) {
        fail(ErrorKind::kInput, "contract_components: vertex " + std::to_string(v) + " is in two components");
      }
      provisional[v] = c;
    }
  }

  Minor minor;
  minor.node_of.assign(n, kNil);
  std::vector<std::uint32_t> final_id(components.size(), kNil);
  for (Vertex v = 0; v < n; ++v) {
    if (provisional[v] == kNil) {
      minor.node_of[v] = minor.num_nodes++;
    } else {
      auto& id = final_id[provisional[v]];
      if (id == kNil) id = minor.num_nodes++;
      minor.node_of[v] = id;
    }
  }

  // Members grouped by node, ascending.
  std::vector<std::uint32_t> offsets(minor.num_nodes + 1, 0);
  for (Vertex v = 0; v < n; ++v) ++offsets[minor.node_of[v] + 1];
  for (std::uint32_t a = 0; a < minor.num_nodes; ++a) offsets[a + 1] += offsets[a];
  std::vector<Vertex> members(n);
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (Vertex v = 0; v < n; ++v) members[cursor[minor.node_of[v]]++] = v;
  }

  // Each unordered node pair is recorded once, from the smaller node's scan,
  // so both directions share the representative edge.
  minor.adjacency.assign(minor.num_nodes, {});
  std::vector<std::uint32_t> stamp(minor.num_nodes, kNil);
  for (std::uint32_t a = 0; a < minor.num_nodes; ++a) {
    for (std::uint32_t i = offsets[a]; i < offsets[a + 1]; ++i) {
      for (const Incidence& inc : g.neighbors(members[i])) {
        const std::uint32_t b = minor.node_of[inc.neighbor];
        if (b > a && stamp[b] != a) {
          stamp[b] = a;
          minor.adjacency[a].push_back({b, inc.edge});
          minor.adjacency[b].push_back({a, inc.edge});
        }
      }
    }
  }
  for (auto& adj : minor.adjacency) {
    std::sort(adj.begin(), adj.end(), [](const MinorEdge& x, const MinorEdge& y) { return x.node < y.node; });
  }
  return minor;
}

std::vector<EdgeId> spanning_tree(const Minor& minor) {
  std::vector<EdgeId> tree;
  if (minor.num_nodes == 0) return tree;
  tree.reserve(minor.num_nodes - 1);
  std::vector<char> seen(minor.num_nodes, 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const MinorEdge& e : minor.adjacency[queue[head]]) {
      if (!seen[e.node]) {
        seen[e.node] = 1;
        queue.push_back(e.node);
        tree.push_back(e.representative);
      }
    }
  }
  if (queue.size() != minor.num_nodes) fail(ErrorKind::kPrecondition, "spanning_tree: minor is disconnected");
  return tree;
}

Tour euler_shortcut(const Graph& g, std::span<const EdgeId> cycle_edges, std::span<const EdgeId> tree_edges) {
  const Vertex n = g.num_vertices();
  if (n == 0) fail(ErrorKind::kInput, "euler_shortcut: empty graph");

  // Multigraph instances: cycle edges as given, tree edges twice.
  std::vector<EdgeId> instances(cycle_edges.begin(), cycle_edges.end());
  for (EdgeId e : tree_edges) {
    instances.push_back(e);
    instances.push_back(e);
  }
  for (EdgeId e : instances) {
    if (e >= g.num_edges()) fail(ErrorKind::kInternal, "euler_shortcut: edge id out of range");
  }

  std::vector<std::uint32_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (EdgeId e : instances) {
    ++offsets[g.edge(e).u + 1];
    ++offsets[g.edge(e).v + 1];
  }
  for (Vertex v = 0; v < n; ++v) {
    if ((offsets[v + 1]) % 2 != 0) {
      fail(ErrorKind::kInternal, "euler_shortcut: vertex " + std::to_string(v) + " has odd degree");
    }
  }
  for (Vertex v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<std::uint32_t> incident(2 * instances.size());
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < instances.size(); ++i) {
      incident[cursor[g.edge(instances[i]).u]++] = i;
      incident[cursor[g.edge(instances[i]).v]++] = i;
    }
  }

  // Iterative Hierholzer from vertex 0.
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<char> used(instances.size(), 0);
  std::vector<Vertex> stack{0};
  std::vector<Vertex> circuit;
  circuit.reserve(instances.size() + 1);
  while (!stack.empty()) {
    const Vertex x = stack.back();
    while (cursor[x] < offsets[x + 1] && used[incident[cursor[x]]]) ++cursor[x];
    if (cursor[x] < offsets[x + 1]) {
      const std::uint32_t i = incident[cursor[x]++];
      used[i] = 1;
      const Edge& e = g.edge(instances[i]);
      stack.push_back(e.u == x ? e.v : e.u);
    } else {
      circuit.push_back(x);
      stack.pop_back();
    }
  }
  if (circuit.size() != instances.size() + 1) {
    fail(ErrorKind::kInternal, "euler_shortcut: edge multiset is not connected");
  }
  std::reverse(circuit.begin(), circuit.end());

  Tour tour;
  tour.order.reserve(n);
  std::vector<char> seen(n, 0);
  for (Vertex v : circuit) {
    if (!seen[v]) {
      seen[v] = 1;
      tour.order.push_back(v);
    }
  }
  if (tour.order.size() != n) fail(ErrorKind::kInternal, "euler_shortcut: some vertex is not reached");
  tour.cost_bound = cycle_edges.size() + 2 * tree_edges.size();
  return tour;
}

std::uint64_t exact_tour_cost(const Graph& g, std::span<const Vertex> order) {
  const Vertex n = g.num_vertices();
  for (Vertex v : order) {
    if (v >= n) fail(ErrorKind::kInput, "exact_tour_cost: vertex " + std::to_string(v) + " out of range");
  }
  if (order.size() <= 1) return 0;

  // Early-exit BFS per non-adjacent pair; `mark` avoids clearing per search.
  std::vector<std::uint32_t> mark(n, kNil);
  std::vector<std::uint32_t> dist(n, 0);
  std::vector<Vertex> queue;
  std::uint32_t search = 0;
  auto distance = [&](Vertex from, Vertex to) -> std::uint64_t {
    if (from == to) return 0;
    if (g.has_edge(from, to)) return 1;
    ++search;
    queue.assign(1, from);
    mark[from] = search;
    dist[from] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (const Incidence& inc : g.neighbors(x)) {
        if (mark[inc.neighbor] == search) continue;
        if (inc.neighbor == to) return dist[x] + 1;
        mark[inc.neighbor] = search;
        dist[inc.neighbor] = dist[x] + 1;
        queue.push_back(inc.neighbor);
      }
    }
    fail(ErrorKind::kPrecondition, "exact_tour_cost: graph is disconnected");
  };

  std::uint64_t cost = 0;
  for (std::size_t i = 0; i < order.size(); ++i) cost += distance(order[i], order[(i + 1) % order.size()]);
  return cost;
}

unsigned require_connected_regular(const Graph& g) {
  const auto k = g.regular_degree();
  if (!k) fail(ErrorKind::kPrecondition, "input graph is not regular");
  if (!g.is_connected()) fail(ErrorKind::kPrecondition, "input graph is disconnected");
  return *k;
}

Tour trivial_tour(const Graph& g, std::string algo) {
  const Vertex n = g.num_vertices();
  if (n == 0) fail(ErrorKind::kInput, "empty graph");
  if (n > 2) fail(ErrorKind::kInternal, "trivial_tour: n > 2");
  if (!g.is_connected()) fail(ErrorKind::kPrecondition, "input graph is disconnected");
  Tour tour;
  for (Vertex v = 0; v < n; ++v) tour.order.push_back(v);
  tour.cost_bound = n == 1 ? 0 : 2;
  tour.meta.algo = std::move(algo);
  tour.meta.k_input = tour.meta.k_used = n - 1;
  return tour;
}

RandomizedRun randomized_tsp_run(const Graph& g, std::uint64_t seed, const RandomizedOptions& options) {
  const auto start = Clock::now();
  RandomizedRun run;
  if (g.num_vertices() <= 2) {
    run.tour = trivial_tour(g, "rand");
    run.tour.meta.seed = seed;
    if (options.exact_cost) run.tour.exact_cost = exact_tour_cost(g, run.tour.order);
    return run;
  }
  const unsigned k_input = require_connected_regular(g);
  const unsigned k = std::bit_floor(k_input);

  auto phase = Clock::now();
  run.digraph = bidirect(g);
  if (k != k_input) run.digraph = regular_subgraph(run.digraph, k);
  const double decompose_ms = elapsed_ms(phase);

  phase = Clock::now();
  Rng rng(seed);
  run.coloring = rand_cycle_cover_coloring(run.digraph, rng, options.coloring);
  BestCover best = best_cover(run.digraph, run.coloring);
  run.chosen = best.color;
  const double color_ms = elapsed_ms(phase);

  phase = Clock::now();
  std::vector<EdgeId> cycle_edges;
  cycle_edges.reserve(best.cover.arc_ids().size());
  for (ArcId a : best.cover.arc_ids()) cycle_edges.push_back(source_edge_of(a));
  const auto cycles = best.cover.cycles();
  const Minor minor = contract_components(g, cycles);
  const auto tree = spanning_tree(minor);
  run.tour = euler_shortcut(g, cycle_edges, tree);
  const std::size_t r = best.cover.num_cycles();
  if (run.tour.cost_bound != g.num_vertices() + 2 * (r - 1)) {
    fail(ErrorKind::kInternal, "randomized_tsp: cost accounting mismatch");
  }
  if (options.exact_cost) run.tour.exact_cost = exact_tour_cost(g, run.tour.order);
  const double assemble_ms = elapsed_ms(phase);

  auto& meta = run.tour.meta;
  meta.algo = "rand";
  meta.seed = seed;
  meta.k_input = k_input;
  meta.k_used = k;
  meta.num_cycles = r;
  meta.timings = {decompose_ms, color_ms, assemble_ms, elapsed_ms(start)};
  return run;
}

Tour doubled_tree_tsp(const Graph& g, bool exact_cost) {
  const auto start = Clock::now();
  Tour tour;
  if (g.num_vertices() <= 2) {
    tour = trivial_tour(g, "mst2");
  } else {
    const Minor minor = contract_components(g, {});
    const auto tree = spanning_tree(minor);
    tour = euler_shortcut(g, {}, tree);
    tour.meta.algo = "mst2";
    const unsigned k = g.regular_degree().value_or(0);
    tour.meta.k_input = tour.meta.k_used = k;
  }
  if (exact_cost) tour.exact_cost = exact_tour_cost(g, tour.order);
  tour.meta.timings.assemble_ms = elapsed_ms(start);
  tour.meta.timings.total_ms = tour.meta.timings.assemble_ms;
  return tour;
}

}  // namespace regtsp
