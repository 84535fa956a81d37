#include "regtsp/regular_decompose.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace regtsp {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

}  // namespace

BipartiteMultigraph BipartiteMultigraph::from_edges(Vertex n_left, Vertex n_right,
                                                    std::vector<std::uint32_t> ids,
                                                    std::vector<BipartiteEdge> edges) {
  if (ids.size() != edges.size()) fail(ErrorKind::kInternal, "edge id count mismatch");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].left >= n_left || edges[i].right >= n_right) {
      fail(ErrorKind::kInput, "bipartite edge " + std::to_string(ids[i]) + " out of range");
    }
    if (i > 0 && ids[i] <= ids[i - 1]) fail(ErrorKind::kInternal, "edge ids must be strictly increasing");
  }

  BipartiteMultigraph b;
  b.n_left_ = n_left;
  b.n_right_ = n_right;
  b.ids_ = std::move(ids);
  b.edges_ = std::move(edges);

  const std::size_t total = static_cast<std::size_t>(n_left) + n_right;
  b.offsets_.assign(total + 1, 0);
  for (const auto& e : b.edges_) {
    ++b.offsets_[e.left + 1];
    ++b.offsets_[n_left + e.right + 1];
  }
  for (std::size_t x = 0; x < total; ++x) b.offsets_[x + 1] += b.offsets_[x];
  b.incidence_.resize(2 * b.edges_.size());
  std::vector<std::uint32_t> cursor(b.offsets_.begin(), b.offsets_.end() - 1);
  for (std::uint32_t i = 0; i < b.edges_.size(); ++i) {
    b.incidence_[cursor[b.edges_[i].left]++] = i;
    b.incidence_[cursor[n_left + b.edges_[i].right]++] = i;
  }

  if (total > 0) {
    const std::size_t k = b.degree(0);
    bool regular = true;
    for (std::size_t x = 1; x < total && regular; ++x) regular = b.degree(static_cast<Vertex>(x)) == k;
    if (regular) b.regular_degree_ = static_cast<unsigned>(k);
  }
  return b;
}

BipartiteMultigraph BipartiteMultigraph::subgraph(std::span<const std::uint32_t> keep) const {
  std::vector<std::uint32_t> ids;
  std::vector<BipartiteEdge> edges;
  ids.reserve(keep.size());
  edges.reserve(keep.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < ids_.size() && j < keep.size(); ++i) {
    while (j < keep.size() && keep[j] < ids_[i]) ++j;
    if (j < keep.size() && keep[j] == ids_[i]) {
      ids.push_back(ids_[i]);
      edges.push_back(edges_[i]);
      ++j;
    }
  }
  return from_edges(n_left_, n_right_, std::move(ids), std::move(edges));
}

BipartiteMultigraph bipartite_encode(const Digraph& d) {
  std::vector<std::uint32_t> ids(d.ids().begin(), d.ids().end());
  std::vector<BipartiteEdge> edges;
  edges.reserve(d.num_arcs());
  for (const Arc& a : d.arcs()) edges.push_back({a.tail, a.head});
  return BipartiteMultigraph::from_edges(d.num_vertices(), d.num_vertices(), std::move(ids), std::move(edges));
}

std::pair<IdSet, IdSet> euler_split(const BipartiteMultigraph& b) {
  const std::size_t total = static_cast<std::size_t>(b.n_left()) + b.n_right();
  for (std::size_t x = 0; x < total; ++x) {
    if (b.degree(static_cast<Vertex>(x)) % 2 != 0) {
      fail(ErrorKind::kInput, "euler_split: vertex " + std::to_string(x) + " has odd degree");
    }
  }

  const auto edges = b.edges();
  const Vertex n_left = b.n_left();
  auto other_end = [&](Vertex x, std::uint32_t e) -> Vertex {
    return x < n_left ? n_left + edges[e].right : edges[e].left;
  };

  std::vector<std::uint32_t> cursor(total, 0);
  std::vector<char> used(edges.size(), 0);
  std::vector<char> side(edges.size(), 0);
  std::vector<std::pair<Vertex, std::uint32_t>> stack;

  // Hierholzer: edges popped off the stack form a closed circuit (in reverse),
  // so alternating on pop order alternates along the circuit.
  for (std::size_t s = 0; s < total; ++s) {
    if (cursor[s] == b.degree(static_cast<Vertex>(s))) continue;
    std::size_t position = 0;
    stack.push_back({static_cast<Vertex>(s), kNil});
    while (!stack.empty()) {
      const auto [x, arrived_by] = stack.back();
      const auto inc = b.incident(x);
      while (cursor[x] < inc.size() && used[inc[cursor[x]]]) ++cursor[x];
      if (cursor[x] < inc.size()) {
        const std::uint32_t e = inc[cursor[x]++];
        used[e] = 1;
        stack.push_back({other_end(x, e), e});
      } else {
        stack.pop_back();
        if (arrived_by != kNil) side[arrived_by] = static_cast<char>(position++ % 2);
      }
    }
  }

  std::pair<IdSet, IdSet> halves;
  const auto ids = b.ids();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    (side[i] == 0 ? halves.first : halves.second).push_back(ids[i]);
  }
  return halves;
}

std::optional<IdSet> peel_matching(const BipartiteMultigraph& b) {
  const Vertex nl = b.n_left();
  const Vertex nr = b.n_right();
  if (nl != nr) return std::nullopt;
  const auto edges = b.edges();

  std::vector<std::uint32_t> mate_left(nl, kNil);
  std::vector<std::uint32_t> mate_right(nr, kNil);
  std::size_t matched = 0;
  for (Vertex u = 0; u < nl; ++u) {
    for (std::uint32_t e : b.incident(u)) {
      if (mate_right[edges[e].right] == kNil) {
        mate_left[u] = e;
        mate_right[edges[e].right] = e;
        ++matched;
        break;
      }
    }
  }

  constexpr std::uint32_t kInf = kNil;
  std::vector<std::uint32_t> dist(nl);
  std::vector<std::uint32_t> queue;
  std::vector<std::uint32_t> cursor(nl);
  std::vector<Vertex> path;
  std::vector<std::uint32_t> path_edges;

  while (matched < nl) {
    // Layering from all free left vertices.
    queue.clear();
    for (Vertex u = 0; u < nl; ++u) {
      if (mate_left[u] == kNil) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = kInf;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (std::uint32_t e : b.incident(u)) {
        const std::uint32_t m = mate_right[edges[e].right];
        if (m == kNil) {
          reachable_free = true;
        } else if (dist[edges[m].left] == kInf) {
          dist[edges[m].left] = dist[u] + 1;
          queue.push_back(edges[m].left);
        }
      }
    }
    if (!reachable_free) break;

    // Vertex-disjoint shortest augmenting paths along the layering.
    std::fill(cursor.begin(), cursor.end(), 0);
    for (Vertex root = 0; root < nl; ++root) {
      if (mate_left[root] != kNil) continue;
      path.assign(1, root);
      path_edges.clear();
      while (!path.empty()) {
        const Vertex x = path.back();
        const auto inc = b.incident(x);
        if (cursor[x] == inc.size()) {
          dist[x] = kInf;
          path.pop_back();
          if (!path_edges.empty()) path_edges.pop_back();
          continue;
        }
        const std::uint32_t e = inc[cursor[x]++];
        const std::uint32_t m = mate_right[edges[e].right];
        if (m == kNil) {
          path_edges.push_back(e);
          for (std::uint32_t pe : path_edges) {
            mate_left[edges[pe].left] = pe;
            mate_right[edges[pe].right] = pe;
          }
          ++matched;
          // Retire the path's vertices for this phase.
          for (Vertex pv : path) dist[pv] = kInf;
          break;
        }
        const Vertex w = edges[m].left;
        if (dist[w] != kInf && dist[w] == dist[x] + 1) {
          path.push_back(w);
          path_edges.push_back(e);
        }
      }
    }
  }

  if (matched < nl) return std::nullopt;
  IdSet matching;
  matching.reserve(nl);
  for (Vertex u = 0; u < nl; ++u) matching.push_back(b.ids()[mate_left[u]]);
  std::sort(matching.begin(), matching.end());
  return matching;
}

namespace {

void decompose_into(const BipartiteMultigraph& b, std::vector<IdSet>& out) {
  const auto k = b.regular_degree();
  if (!k) fail(ErrorKind::kInput, "decompose_matchings: input is not regular");
  if (*k == 0) return;
  if (*k == 1) {
    out.emplace_back(b.ids().begin(), b.ids().end());
    return;
  }
  if (*k % 2 == 0) {
    auto [first, second] = euler_split(b);
    decompose_into(b.subgraph(first), out);
    decompose_into(b.subgraph(second), out);
    return;
  }
  auto matching = peel_matching(b);
  if (!matching) fail(ErrorKind::kInternal, "no perfect matching in a regular bipartite multigraph");
  IdSet rest;
  rest.reserve(b.num_edges() - matching->size());
  std::set_difference(b.ids().begin(), b.ids().end(), matching->begin(), matching->end(),
                      std::back_inserter(rest));
  out.push_back(std::move(*matching));
  decompose_into(b.subgraph(rest), out);
}

}  // namespace

std::vector<IdSet> decompose_matchings(const BipartiteMultigraph& b) {
  std::vector<IdSet> out;
  decompose_into(b, out);
  return out;
}

Digraph regular_subgraph(const Digraph& d, unsigned k_target) {
  const auto k = d.regular_degree();
  if (!k) fail(ErrorKind::kPrecondition, "regular_subgraph: digraph is not regular");
  if (k_target < 1 || k_target > *k) {
    fail(ErrorKind::kInput, "regular_subgraph: target degree " + std::to_string(k_target) +
                                " outside 1.." + std::to_string(*k));
  }
  if (k_target == *k) return d;

  const auto matchings = decompose_matchings(bipartite_encode(d));
  IdSet keep;
  keep.reserve(static_cast<std::size_t>(k_target) * d.num_vertices());
  for (unsigned i = 0; i < k_target; ++i) keep.insert(keep.end(), matchings[i].begin(), matchings[i].end());
  std::sort(keep.begin(), keep.end());

  std::vector<Arc> arcs;
  arcs.reserve(keep.size());
  for (std::uint32_t id : keep) arcs.push_back(d.arc(*d.index_of(id)));
  return Digraph::from_arcs(d.num_vertices(), std::move(keep), std::move(arcs));
}

}  // namespace regtsp
