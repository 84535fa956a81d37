#include "regtsp/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace regtsp {

Graph Graph::from_edges(Vertex n, std::vector<Edge> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw EdgeError(i, "endpoint out of range: " + std::to_string(e.u) + " " +
                             std::to_string(e.v) + " with n = " + std::to_string(n));
    }
    if (e.u == e.v) {
      throw EdgeError(i, "self-loop at vertex " + std::to_string(e.u));
    }
  }
  if (edges.size() > std::numeric_limits<EdgeId>::max()) {
    fail(ErrorKind::kInput, "too many edges");
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.incidence_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    g.incidence_[cursor[e.u]++] = {e.v, i};
    g.incidence_[cursor[e.v]++] = {e.u, i};
  }

  // Sort incidences by neighbor; a duplicate edge shows up as two adjacent
  // entries with the same neighbor. Report the earliest second occurrence.
  std::size_t first_dup = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < n; ++v) {
    auto first = g.incidence_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.incidence_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last, [](const Incidence& a, const Incidence& b) {
      return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.edge < b.edge;
    });
    for (auto it = first; it != last && it + 1 != last; ++it) {
      if (it->neighbor == (it + 1)->neighbor) {
        first_dup = std::min<std::size_t>(first_dup, (it + 1)->edge);
      }
    }
  }
  if (first_dup != std::numeric_limits<std::size_t>::max()) {
    const Edge& e = edges[first_dup];
    throw EdgeError(first_dup,
                    "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
  }

  g.edges_ = std::move(edges);
  if (n > 0) {
    const std::size_t k = g.degree(0);
    bool regular = true;
    for (Vertex v = 1; v < n && regular; ++v) regular = g.degree(v) == k;
    if (regular) g.regular_degree_ = static_cast<unsigned>(k);
  }
  return g;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  Vertex reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : neighbors(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == n_;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Incidence& a, Vertex x) { return a.neighbor < x; });
  if (it == adj.end() || it->neighbor != v) return std::nullopt;
  return it->edge;
}

Digraph bidirect(const Graph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.num_edges());
  for (const Edge& e : g.edges()) {
    arcs.push_back({e.u, e.v});
    arcs.push_back({e.v, e.u});
  }
  return Digraph::from_arcs(g.num_vertices(), std::move(arcs));
}

}  // namespace regtsp
