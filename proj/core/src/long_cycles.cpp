#include "regtsp/long_cycles.hpp"

#include <chrono>
#include <limits>
#include <string>

namespace regtsp {

namespace {

constexpr std::uint32_t kOffPath = std::numeric_limits<std::uint32_t>::max();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::uint64_t isqrt(std::uint64_t x) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

unsigned long_cycle_threshold(unsigned k) {
  // ceil(2 sqrt(k)) = ceil(sqrt(4k)).
  const std::uint64_t four_k = 4ull * k;
  std::uint64_t d = isqrt(four_k);
  if (d * d < four_k) ++d;
  return static_cast<unsigned>(std::min<std::uint64_t>(d, k));
}

bool leftover_within_bound(std::uint64_t n, unsigned k, unsigned d, std::uint64_t m) {
  // m <= n(k-2) / (2(k-d+1))
  return m * 2 * (static_cast<std::uint64_t>(k) - d + 1) <= n * (static_cast<std::uint64_t>(k) - 2);
}

bool cost_within_bound(std::uint64_t n, unsigned k, unsigned d, std::uint64_t cost) {
  // Multiply n(3/2 + 2/d + (d-3)/(2(k-d+1))) through by 2d(k-d+1).
  const std::uint64_t slack = static_cast<std::uint64_t>(k) - d + 1;
  const std::uint64_t lhs = cost * 2 * d * slack;
  const std::uint64_t rhs = n * (3ull * d * slack + 4ull * slack + static_cast<std::uint64_t>(d) * (d - 3));
  return lhs <= rhs;
}

namespace detail {

LongCyclesResult long_cycles_unchecked(const Graph& g, unsigned d, const LongCyclesOptions& options) {
  if (d < 2) fail(ErrorKind::kInput, "long_cycles: d must be at least 2");
  const Vertex n = g.num_vertices();
  LongCyclesResult result;
  result.d = d;

  std::vector<char> in_h(n, 1);
  std::vector<std::uint32_t> position(n, kOffPath);
  std::vector<std::uint32_t> cursor(n, 0);
  std::vector<Vertex> path;
  Vertex remaining = n;
  Vertex next_start = 0;

  auto remove = [&](Vertex v) {
    in_h[v] = 0;
    position[v] = kOffPath;
    --remaining;
  };

  auto audit_path = [&] {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!in_h[path[i]] || position[path[i]] != i) fail(ErrorKind::kInternal, "long_cycles: path bookkeeping broken");
      if (i > 0 && !g.has_edge(path[i - 1], path[i])) fail(ErrorKind::kInternal, "long_cycles: path is not a path");
    }
  };

  while (remaining > 0) {
    if (path.empty()) {
      while (!in_h[next_start]) ++next_start;
      position[next_start] = 0;
      path.push_back(next_start);
      continue;
    }

    const Vertex end = path.back();
    const std::size_t t = path.size();
    const auto adj = g.neighbors(end);

    // Neighbors that are gone or already on the path never become
    // extension candidates again, so the cursor only moves forward.
    auto& c = cursor[end];
    while (c < adj.size() && (!in_h[adj[c].neighbor] || position[adj[c].neighbor] != kOffPath)) ++c;
    if (c < adj.size()) {
      const Vertex next = adj[c++].neighbor;
      position[next] = static_cast<std::uint32_t>(t);
      path.push_back(next);
      if (options.audit) audit_path();
      continue;
    }

    // Stuck: every neighbor still in H lies on the path. Positions are
    // 0-based here; the closing neighbor must sit at index <= t - d.
    std::uint32_t chosen = kOffPath;
    if (t >= d) {
      for (const Incidence& inc : adj) {
        const Vertex w = inc.neighbor;
        if (!in_h[w]) continue;
        const std::uint32_t p = position[w];
        if (p + d > t) continue;
        if (chosen == kOffPath || (options.prefer_largest_s ? p > chosen : p < chosen)) chosen = p;
      }
    }

    if (chosen != kOffPath) {
      auto& cycle = result.cycles.emplace_back(path.begin() + chosen, path.end());
      for (Vertex v : cycle) remove(v);
      path.resize(chosen);
    } else {
      if (options.audit) {
        for (const Incidence& inc : adj) {
          if (!in_h[inc.neighbor]) continue;
          const std::uint32_t p = position[inc.neighbor];
          if (p == kOffPath || t - 1 - p > d - 2) {
            fail(ErrorKind::kInternal, "long_cycles: dead end at vertex " + std::to_string(end) +
                                           " has a neighbor farther than d-2 along the path");
          }
        }
      }
      result.leftover.push_back(end);
      remove(end);
      path.pop_back();
    }
    if (options.audit) audit_path();
  }
  return result;
}

}  // namespace detail

LongCyclesResult long_cycles(const Graph& g, unsigned d, const LongCyclesOptions& options) {
  const auto k = g.regular_degree();
  if (!k) fail(ErrorKind::kPrecondition, "long_cycles: graph is not regular");
  if (*k < 4) fail(ErrorKind::kPrecondition, "long_cycles: degree " + std::to_string(*k) + " is below 4");
  if (d < 3 || d > *k) {
    fail(ErrorKind::kInput, "long_cycles: d = " + std::to_string(d) + " outside 3.." + std::to_string(*k));
  }
  return detail::long_cycles_unchecked(g, d, options);
}

DeterministicRun deterministic_tsp_run(const Graph& g, const DeterministicOptions& options) {
  const auto start = Clock::now();
  DeterministicRun run;
  if (g.num_vertices() <= 2) {
    run.tour = trivial_tour(g, "det");
    if (options.exact_cost) run.tour.exact_cost = exact_tour_cost(g, run.tour.order);
    return run;
  }
  const unsigned k = require_connected_regular(g);
  const Vertex n = g.num_vertices();

  if (k == 2) {
    // Connected and 2-regular: the graph is one Hamiltonian cycle.
    std::vector<EdgeId> all(g.num_edges());
    for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
    run.tour = euler_shortcut(g, all, {});
    run.tour.meta.num_cycles = 1;
  } else if (k == 3) {
    run.tour = euler_shortcut(g, {}, spanning_tree(contract_components(g, {})));
  } else {
    const unsigned d = long_cycle_threshold(k);
    auto phase = Clock::now();
    run.cycles = long_cycles(g, d, options.long_cycles);
    const double cycles_ms = elapsed_ms(phase);

    phase = Clock::now();
    std::vector<EdgeId> cycle_edges;
    cycle_edges.reserve(n - run.cycles.leftover.size());
    for (const auto& cycle : run.cycles.cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto e = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (!e) fail(ErrorKind::kInternal, "deterministic_tsp: long cycle uses a non-edge");
        cycle_edges.push_back(*e);
      }
    }
    const auto tree = spanning_tree(contract_components(g, run.cycles.cycles));
    run.tour = euler_shortcut(g, cycle_edges, tree);

    const std::size_t m = run.cycles.leftover.size();
    if (!leftover_within_bound(n, k, d, m)) {
      fail(ErrorKind::kInternal, "deterministic_tsp: leftover count " + std::to_string(m) + " exceeds its bound");
    }
    if (!cost_within_bound(n, k, d, run.tour.cost_bound)) {
      fail(ErrorKind::kInternal, "deterministic_tsp: cost bound " + std::to_string(run.tour.cost_bound) +
                                     " exceeds n(3/2 + 2/d + (d-3)/(2(k-d+1)))");
    }
    run.tour.meta.d = d;
    run.tour.meta.m = m;
    run.tour.meta.num_cycles = run.cycles.cycles.size();
    run.tour.meta.timings.decompose_ms = cycles_ms;
    run.tour.meta.timings.assemble_ms = elapsed_ms(phase);
  }
  if (options.exact_cost) run.tour.exact_cost = exact_tour_cost(g, run.tour.order);
  run.tour.meta.algo = "det";
  run.tour.meta.k_input = run.tour.meta.k_used = k;
  run.tour.meta.timings.total_ms = elapsed_ms(start);
  return run;
}

}  // namespace regtsp
