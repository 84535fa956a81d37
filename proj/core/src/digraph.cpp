#include <algorithm>
#include <numeric>
#include <string>

#include "regtsp/graph.hpp"

namespace regtsp {

namespace {

// Stable counting sort of arc indices by `key`, producing CSR offsets.
template <typename KeyFn>
void bucket_arcs(Vertex n, std::size_t m, KeyFn key, std::vector<std::uint32_t>& offsets,
                 std::vector<std::uint32_t>& order) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < m; ++i) ++offsets[key(i) + 1];
  for (Vertex v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  order.resize(m);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t i = 0; i < m; ++i) order[cursor[key(i)]++] = static_cast<std::uint32_t>(i);
}

}  // namespace

Digraph Digraph::from_arcs(Vertex n, std::vector<Arc> arcs) {
  std::vector<ArcId> ids(arcs.size());
  std::iota(ids.begin(), ids.end(), ArcId{0});
  return from_arcs(n, std::move(ids), std::move(arcs));
}

Digraph Digraph::from_arcs(Vertex n, std::vector<ArcId> ids, std::vector<Arc> arcs) {
  if (ids.size() != arcs.size()) fail(ErrorKind::kInternal, "arc id count mismatch");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].tail >= n || arcs[i].head >= n) {
      fail(ErrorKind::kInput, "arc " + std::to_string(ids[i]) + " has an endpoint out of range");
    }
    if (arcs[i].tail == arcs[i].head) {
      fail(ErrorKind::kInput, "arc " + std::to_string(ids[i]) + " is a self-loop");
    }
    if (i > 0 && ids[i] <= ids[i - 1]) {
      fail(ErrorKind::kInternal, "arc ids must be strictly increasing");
    }
  }

  Digraph d;
  d.n_ = n;
  d.ids_ = std::move(ids);
  d.arcs_ = std::move(arcs);
  const auto& a = d.arcs_;
  bucket_arcs(n, a.size(), [&](std::size_t i) { return a[i].tail; }, d.out_offsets_, d.out_);
  bucket_arcs(n, a.size(), [&](std::size_t i) { return a[i].head; }, d.in_offsets_, d.in_);

  if (n > 0) {
    const std::uint32_t k = d.out_offsets_[1];
    bool regular = true;
    for (Vertex v = 0; v < n && regular; ++v) {
      regular = d.out_offsets_[v + 1] - d.out_offsets_[v] == k &&
                d.in_offsets_[v + 1] - d.in_offsets_[v] == k;
    }
    if (regular) d.regular_degree_ = k;
  }
  return d;
}

std::optional<std::size_t> Digraph::index_of(ArcId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

}  // namespace regtsp
