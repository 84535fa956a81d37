#include "regtsp/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace regtsp {

namespace {

std::vector<std::vector<std::uint32_t>> all_pairs_hops(const Graph& g) {
  const Vertex n = g.num_vertices();
  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kUnreached));
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    auto& row = dist[s];
    row[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Incidence& inc : g.neighbors(queue[head])) {
        if (row[inc.neighbor] == kUnreached) {
          row[inc.neighbor] = row[queue[head]] + 1;
          queue.push_back(inc.neighbor);
        }
      }
    }
    if (queue.size() != n) fail(ErrorKind::kPrecondition, "held_karp_opt: graph is disconnected");
  }
  return dist;
}

}  // namespace

std::uint64_t held_karp_opt(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n == 0) fail(ErrorKind::kInput, "held_karp_opt: empty graph");
  if (n > kHeldKarpMaxVertices) {
    fail(ErrorKind::kInput, "held_karp_opt: n = " + std::to_string(n) + " exceeds " + std::to_string(kHeldKarpMaxVertices));
  }
  const auto dist = all_pairs_hops(g);
  if (n == 1) return 0;
  if (n == 2) return 2 * dist[0][1];

  // Vertex 0 is the fixed start; subsets range over vertices 1..n-1, bit i-1.
  const std::size_t rest = n - 1;
  const std::size_t subsets = std::size_t{1} << rest;
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 2;
  std::vector<std::uint32_t> best(subsets * rest, kInf);
  for (std::size_t i = 0; i < rest; ++i) best[(std::size_t{1} << i) * rest + i] = dist[0][i + 1];
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (std::size_t last = 0; last < rest; ++last) {
      const std::uint32_t here = best[mask * rest + last];
      if (here >= kInf || !(mask & (std::size_t{1} << last))) continue;
      for (std::size_t next = 0; next < rest; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t grown = mask | (std::size_t{1} << next);
        auto& slot = best[grown * rest + next];
        slot = std::min(slot, here + dist[last + 1][next + 1]);
      }
    }
  }
  std::uint64_t opt = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t last = 0; last < rest; ++last) {
    opt = std::min<std::uint64_t>(opt, best[(subsets - 1) * rest + last] + dist[last + 1][0]);
  }
  return opt;
}

std::vector<CycleCover> enumerate_cycle_covers(const Digraph& d) {
  const Vertex n = d.num_vertices();
  if (n > kEnumerationMaxVertices) {
    fail(ErrorKind::kInput, "enumerate_cycle_covers: n = " + std::to_string(n) + " exceeds " +
                                std::to_string(kEnumerationMaxVertices));
  }
  std::vector<CycleCover> covers;
  std::vector<char> head_used(n, 0);
  std::vector<ArcId> chosen;
  chosen.reserve(n);

  // Depth-first over vertices in order, one out-arc each, heads distinct.
  auto extend = [&](auto&& self, Vertex v) -> void {
    if (v == n) {
      covers.push_back(cover_from_arcs(d, chosen));
      return;
    }
    for (std::uint32_t a : d.out_arcs(v)) {
      const Vertex h = d.arc(a).head;
      if (head_used[h]) continue;
      head_used[h] = 1;
      chosen.push_back(d.id(a));
      self(self, v + 1);
      chosen.pop_back();
      head_used[h] = 0;
    }
  };
  if (n > 0) extend(extend, 0);
  return covers;
}

std::map<std::size_t, std::size_t> count_covers_by_cycles(const std::vector<CycleCover>& covers) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& c : covers) ++counts[c.num_cycles()];
  return counts;
}

std::map<std::size_t, std::size_t> cycle_cover_census(const Digraph& d) {
  const Vertex n = d.num_vertices();
  if (n > kEnumerationMaxVertices) {
    fail(ErrorKind::kInput, "cycle_cover_census: n = " + std::to_string(n) + " exceeds " +
                                std::to_string(kEnumerationMaxVertices));
  }
  std::map<std::size_t, std::size_t> census;
  std::vector<char> head_used(n, 0);
  std::vector<Vertex> successor(n);
  auto extend = [&](auto&& self, Vertex v) -> void {
    if (v == n) {
      ++census[count_cycles(successor)];
      return;
    }
    for (std::uint32_t a : d.out_arcs(v)) {
      const Vertex h = d.arc(a).head;
      if (head_used[h]) continue;
      head_used[h] = 1;
      successor[v] = h;
      self(self, v + 1);
      head_used[h] = 0;
    }
  };
  if (n > 0) extend(extend, 0);
  return census;
}

BigInt lemma4_bound(unsigned n, unsigned k, unsigned r) {
  if (r < 1 || r > n / 2) {
    fail(ErrorKind::kInput, "lemma4_bound: r = " + std::to_string(r) + " outside 1.." + std::to_string(n / 2));
  }
  BigInt binomial = 1;
  for (unsigned i = 0; i < r; ++i) binomial = binomial * (n - i) / (i + 1);
  return binomial * boost::multiprecision::pow(BigInt(k), n - r);
}

double f_log(unsigned n, unsigned k) {
  if (n < 1 || k < 1) fail(ErrorKind::kInput, "f_log: need n >= 1 and k >= 1");
  double log_factorial = 0;
  for (unsigned i = 2; i <= k; ++i) log_factorial += std::log(static_cast<double>(i));
  const double per_vertex = k * std::log(static_cast<double>(k)) - 2 * log_factorial;
  return n * per_vertex - (k - 1) * std::log(2.0);
}

CycleThreshold cycle_threshold(std::uint64_t n, unsigned k) {
  if (k < 2) fail(ErrorKind::kInput, "cycle_threshold: need k >= 2");
  const double value = AnalysisConstants::kGamma * static_cast<double>(n) / std::log(static_cast<double>(k));
  return {value, value >= static_cast<double>(n) / 2};
}

DistributionReport coloring_distribution_test(const Digraph& d, std::size_t runs, std::uint64_t seed,
                                              const ColoringOptions& options) {
  const auto k = d.regular_degree();
  if (d.num_vertices() > 6) fail(ErrorKind::kInput, "coloring_distribution_test: needs n <= 6");
  if (!k || *k > 4 || !std::has_single_bit(*k)) {
    fail(ErrorKind::kInput, "coloring_distribution_test: needs a regular(k) digraph with k in {1, 2, 4}");
  }
  if (runs < 10000) fail(ErrorKind::kInput, "coloring_distribution_test: needs at least 10^4 runs");

  DistributionReport report;
  report.runs = runs;
  for (std::size_t i = 0; i < runs; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto coloring = rand_cycle_cover_coloring(d, rng, options);
    ++report.counts[std::vector<Color>(coloring.colors().begin(), coloring.colors().end())];
  }
  std::size_t most = 0;
  for (const auto& [coloring, count] : report.counts) most = std::max(most, count);
  report.max_frequency = static_cast<double>(most) / static_cast<double>(runs);
  report.f = std::exp(f_log(d.num_vertices(), *k));
  report.bound = report.f + 4 * std::sqrt(report.f / static_cast<double>(runs));
  report.within_bound = report.max_frequency <= report.bound;
  return report;
}

}  // namespace regtsp
