#include "regtsp/cycle_cover_coloring.hpp"

#include <sys/mman.h>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <new>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>

namespace regtsp {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

// Partial Fisher-Yates: the first `take` entries become a uniform random
// subset (in random order) of the list.
void choose_subset(std::span<std::uint32_t> list, std::size_t take, Rng& rng) {
  for (std::size_t t = 0; t < take; ++t) {
    const std::size_t r = t + static_cast<std::size_t>(rng.below(list.size() - t));
    std::swap(list[t], list[r]);
  }
}

// Allocator for the large randomly accessed working arrays; asks the kernel
// for transparent huge pages, which cuts TLB misses substantially.
template <typename T>
struct HugePageAllocator {
  using value_type = T;
  static constexpr std::size_t kHugePage = std::size_t{2} << 20;

  HugePageAllocator() = default;
  template <typename U>
  HugePageAllocator(const HugePageAllocator<U>&) {}

  // Small arrays take the ordinary heap; huge pages only pay off once an
  // array spans several of them.
  static constexpr std::size_t kMinHugeBytes = 4 * kHugePage;

  T* allocate(std::size_t count) {
    const std::size_t raw = count * sizeof(T);
    if (raw < kMinHugeBytes) return static_cast<T*>(::operator new(raw));
    const std::size_t bytes = (raw + kHugePage - 1) / kHugePage * kHugePage;
    void* p = std::aligned_alloc(kHugePage, bytes);
    if (p == nullptr) throw std::bad_alloc();
#ifdef MADV_HUGEPAGE
    madvise(p, bytes, MADV_HUGEPAGE);
#endif
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t count) {
    if (count * sizeof(T) < kMinHugeBytes) {
      ::operator delete(p);
    } else {
      std::free(p);
    }
  }

  template <typename U>
  bool operator==(const HugePageAllocator<U>&) const { return true; }
};

template <typename T>
using BigVector = std::vector<T, HugePageAllocator<T>>;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Checks that for every (vertex, color) pair exactly one arc leaves and one
// enters, with vertex ids taken as `ids >> shift`.
void audit_level(std::span<const std::uint32_t> tails, std::span<const std::uint32_t> heads,
                 std::span<const Color> colors, unsigned shift, std::size_t num_vertices, unsigned num_colors,
                 unsigned level) {
  std::vector<std::uint8_t> out_count(num_vertices * num_colors, 0);
  std::vector<std::uint8_t> in_count(num_vertices * num_colors, 0);
  for (std::size_t i = 0; i < tails.size(); ++i) {
    const std::size_t c = colors[i] - 1;
    auto& o = out_count[(tails[i] >> shift) * num_colors + c];
    auto& n = in_count[(heads[i] >> shift) * num_colors + c];
    o = static_cast<std::uint8_t>(std::min(o + 1, 2));
    n = static_cast<std::uint8_t>(std::min(n + 1, 2));
  }
  for (std::size_t s = 0; s < out_count.size(); ++s) {
    if (out_count[s] != 1 || in_count[s] != 1) {
      fail(ErrorKind::kInternal, "coloring audit failed at recursion level " + std::to_string(level) +
                                     ": color " + std::to_string(s % num_colors + 1) + " at vertex " +
                                     std::to_string(s / num_colors) + " is not a cycle cover");
    }
  }
}

}  // namespace

IdSet CycleCoverColoring::class_arcs(const Digraph& d, Color c) const {
  IdSet ids;
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (colors_[i] == c) ids.push_back(d.id(i));
  }
  return ids;
}

CycleCover CycleCoverColoring::cover(const Digraph& d, Color c) const { return cover_from_arcs(d, class_arcs(d, c)); }

std::vector<std::size_t> CycleCoverColoring::cycle_counts(const Digraph& d) const {
  const std::size_t n = d.num_vertices();
  std::vector<Vertex> successor(n * k_);
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    const Arc& a = d.arc(i);
    successor[(colors_[i] - 1) * n + a.tail] = a.head;
  }
  std::vector<std::size_t> counts(k_);
  for (unsigned c = 0; c < k_; ++c) {
    counts[c] = count_cycles(std::span<const Vertex>(successor).subspan(c * n, n));
  }
  return counts;
}

std::map<std::size_t, std::size_t> CycleCoverColoring::cycle_count_histogram(const Digraph& d) const {
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t r : cycle_counts(d)) ++histogram[r];
  return histogram;
}

void validate_coloring(const Digraph& d, const CycleCoverColoring& col) {
  if (col.colors().size() != d.num_arcs()) fail(ErrorKind::kInternal, "coloring size does not match the digraph");
  for (Color c : col.colors()) {
    if (c < 1 || c > col.k()) fail(ErrorKind::kInternal, "color " + std::to_string(c) + " out of range");
  }
  std::vector<std::uint32_t> tails(d.num_arcs());
  std::vector<std::uint32_t> heads(d.num_arcs());
  for (std::size_t i = 0; i < d.num_arcs(); ++i) {
    tails[i] = d.arc(i).tail;
    heads[i] = d.arc(i).head;
  }
  audit_level(tails, heads, col.colors(), 0, d.num_vertices(), col.k(), 0);
}

Digraph split_vertices(const Digraph& d, Rng& rng) {
  const auto k = d.regular_degree();
  if (!k || *k % 2 != 0) fail(ErrorKind::kInput, "split_vertices: needs an even-regular digraph");
  const std::size_t half = *k / 2;

  std::vector<Arc> arcs(d.arcs().begin(), d.arcs().end());
  std::vector<std::uint32_t> scratch;
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    const auto in = d.in_arcs(v);
    scratch.assign(in.begin(), in.end());
    choose_subset(scratch, half, rng);
    for (std::size_t t = 0; t < scratch.size(); ++t) arcs[scratch[t]].head = 2 * v + (t < half ? 0 : 1);

    const auto out = d.out_arcs(v);
    scratch.assign(out.begin(), out.end());
    choose_subset(scratch, half, rng);
    for (std::size_t t = 0; t < scratch.size(); ++t) arcs[scratch[t]].tail = 2 * v + (t < half ? 0 : 1);
  }
  return Digraph::from_arcs(2 * d.num_vertices(), std::vector<ArcId>(d.ids().begin(), d.ids().end()),
                            std::move(arcs));
}

Digraph fuse_vertices(const Digraph& h) {
  std::vector<Arc> arcs(h.arcs().begin(), h.arcs().end());
  for (Arc& a : arcs) {
    a.tail /= 2;
    a.head /= 2;
  }
  return Digraph::from_arcs(h.num_vertices() / 2, std::vector<ArcId>(h.ids().begin(), h.ids().end()),
                            std::move(arcs));
}

TwoRegularSplit split_two_regular(const Digraph& g) {
  if (g.regular_degree() != 2u) fail(ErrorKind::kInput, "split_two_regular: input is not regular(2)");

  TwoRegularSplit split;
  std::vector<char> visited(g.num_arcs(), 0);
  std::vector<char> side(g.num_arcs(), 0);
  auto other = [](std::span<const std::uint32_t> pair, std::uint32_t a) { return pair[0] == a ? pair[1] : pair[0]; };

  for (std::uint32_t start = 0; start < g.num_arcs(); ++start) {
    if (visited[start]) continue;
    auto& cycle = split.cycles.emplace_back();
    std::uint32_t a = start;
    int parity = 0;
    do {
      visited[a] = 1;
      side[a] = static_cast<char>(parity);
      cycle.push_back(g.id(a));
      a = parity == 0 ? other(g.in_arcs(g.arc(a).head), a) : other(g.out_arcs(g.arc(a).tail), a);
      parity ^= 1;
    } while (a != start);
  }
  for (std::size_t i = 0; i < g.num_arcs(); ++i) (side[i] == 0 ? split.s : split.s_prime).push_back(g.id(i));
  return split;
}

namespace {

// Union-find over walk labels; rel is the parity of a label relative to its
// parent, so an arc's parity relative to its cycle's root label is its own
// parity xor the accumulated rel.
class ParityForest {
 public:
  std::uint32_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    rel_.push_back(0);
    return parent_.back();
  }

  std::size_t size() const { return parent_.size(); }

  std::pair<std::uint32_t, std::uint8_t> find(std::uint32_t x) {
    std::uint8_t acc = 0;
    std::uint32_t root = x;
    while (parent_[root] != root) {
      acc ^= rel_[root];
      root = parent_[root];
    }
    // Compress: point everything on the path straight at the root.
    std::uint8_t remaining = acc;
    while (parent_[x] != x) {
      const std::uint32_t next = parent_[x];
      const std::uint8_t step = rel_[x];
      parent_[x] = root;
      rel_[x] = remaining;
      remaining ^= step;
      x = next;
    }
    return {root, acc};
  }

  // Records parity(a) xor parity(b) == diff.
  void unite(std::uint32_t a, std::uint32_t b, std::uint8_t diff) {
    const auto [ra, pa] = find(a);
    const auto [rb, pb] = find(b);
    if (ra == rb) return;
    parent_[std::max(ra, rb)] = std::min(ra, rb);
    rel_[std::max(ra, rb)] = pa ^ pb ^ diff;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rel_;
};

}  // namespace

CycleCoverColoring rand_cycle_cover_coloring(const Digraph& d, Rng& rng, const ColoringOptions& options) {
  const auto degree = d.regular_degree();
  if (!degree || *degree == 0 || !std::has_single_bit(*degree)) {
    fail(ErrorKind::kInput, "rand_cycle_cover_coloring: needs a regular digraph whose degree is a power of two");
  }
  const unsigned k = *degree;
  const unsigned levels = static_cast<unsigned>(std::countr_zero(k));
  const std::size_t n = d.num_vertices();
  const std::size_t m = d.num_arcs();
  constexpr std::uint32_t kFlag = 0x80000000u;
  if (m >= kFlag) fail(ErrorKind::kInput, "rand_cycle_cover_coloring: instance too large");

  // Top-down. Arcs are listed by head (and by tail) in ascending order; a
  // level-j vertex u owns positions [u * k_j, (u+1) * k_j), k_j = k / 2^j.
  // Splitting u keeps its chosen half in front (vertex 2u) and the rest
  // behind (2u+1), each half still ascending, so the next level's ranges line
  // up by themselves and draw the same numbers a digraph-rebuilding split
  // would.
  BigVector<std::uint32_t> in_order(m), out_order(m);
  for (Vertex v = 0; v < n; ++v) {
    std::copy(d.in_arcs(v).begin(), d.in_arcs(v).end(), in_order.begin() + static_cast<std::ptrdiff_t>(v) * k);
    std::copy(d.out_arcs(v).begin(), d.out_arcs(v).end(), out_order.begin() + static_cast<std::ptrdiff_t>(v) * k);
  }
  {
    std::vector<std::uint32_t> positions(k), scratch(k);
    std::vector<std::uint8_t> chosen(k);
    auto split_range = [&](std::uint32_t* range, std::size_t kj) {
      const std::size_t half = kj / 2;
      std::iota(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(kj), 0u);
      choose_subset(std::span(positions.data(), kj), half, rng);
      std::fill_n(chosen.begin(), kj, 0);
      for (std::size_t t = 0; t < half; ++t) chosen[positions[t]] = 1;
      std::copy_n(range, kj, scratch.begin());
      std::size_t front = 0, back = half;
      for (std::size_t p = 0; p < kj; ++p) {
        const std::size_t c = chosen[p];
        range[c ? front : back] = scratch[p];
        front += c;
        back += 1 - c;
      }
    };
    for (unsigned j = 0; j < levels; ++j) {
      const std::size_t kj = k >> j;
      for (std::size_t u = 0; u < (n << j); ++u) {
        split_range(in_order.data() + u * kj, kj);
        split_range(out_order.data() + u * kj, kj);
      }
    }
  }

  // Records are kept in final-head order: record p is the arc in_order[p],
  // whose final head is p. Linking by head is then a sequential pass.
  BigVector<std::uint32_t> out_record(m);
  {
    BigVector<std::uint32_t> record_of(m);
    for (std::uint32_t p = 0; p < m; ++p) record_of[in_order[p]] = p;
    for (std::uint32_t t = 0; t < m; ++t) out_record[t] = record_of[out_order[t]];
  }
  BigVector<std::uint32_t>().swap(out_order);

  // Final tail of each record; the audits and per-component flips need it.
  // A level-j endpoint is the final one shifted right by levels - j.
  std::vector<std::uint32_t> tail_of, head_of;
  if (options.audit_levels || options.flips == FlipGranularity::kPerComponent) {
    tail_of.resize(m);
    head_of.resize(m);
    for (std::uint32_t t = 0; t < m; ++t) tail_of[out_record[t]] = t;
    std::iota(head_of.begin(), head_of.end(), 0u);
  }

  // Bottom-up: fuse to level j, then split every class (a 2-regular digraph)
  // into its two alternation classes and move one of them to c + half.
  //
  // Alternating cycles are traced by several interleaved walkers so that
  // their memory accesses overlap. Walkers that land on the same cycle are
  // merged afterwards; a cycle's parity and its flip bit are taken relative
  // to its smallest arc, and bits are drawn colors ascending, then by that
  // smallest arc, exactly as a one-cycle-at-a-time walk would draw them.
  struct Record {
    std::uint32_t in;   // other record of the class entering the head
    std::uint32_t out;  // other record of the class leaving the tail
    std::uint32_t label;
    std::uint16_t parity;
    std::uint16_t color;  // 0-based
  };
  static_assert(sizeof(Record) == 16);
  if (k > 65536) fail(ErrorKind::kInput, "rand_cycle_cover_coloring: degree too large");
  constexpr std::uint32_t kNoLabel = kNil;
  constexpr int kWalkers = 16;
  BigVector<Record> records(m);
  for (Record& r : records) {
    r.label = kNoLabel;
    r.color = 0;
  }
  std::vector<std::uint32_t> first(k, kNil);

  auto record_colors = [&] {
    std::vector<Color> colors(m);
    for (std::size_t p = 0; p < m; ++p) colors[p] = records[p].color + 1u;
    return colors;
  };
  if (options.audit_levels) audit_level(tail_of, head_of, record_colors(), 0, n << levels, 1, levels);

  // A level-j vertex owns 2 * half consecutive final positions (half =
  // k / 2^(j+1)): two arcs of each color enter (and leave) it, and they
  // become partners. `record_at` maps a final position to its record.
  auto link_span = [&](std::size_t base, std::size_t half, auto record_at, std::uint32_t Record::*member) {
    for (std::size_t t = base; t < base + 2 * half; ++t) {
      const std::uint32_t p = record_at(t);
      Record& r = records[p];
      if (r.color >= half) fail(ErrorKind::kInternal, "recoloring: color out of range");
      std::uint32_t& f = first[r.color];
      if (f == kNil) {
        f = p;
      } else if (f != kFlag) {
        r.*member = f;
        records[f].*member = p;
        f = kFlag;
      } else {
        fail(ErrorKind::kInternal, "recoloring: a color class is not 2-regular after fusing");
      }
    }
    for (std::size_t c = 0; c < half; ++c) {
      if (first[c] != kFlag) fail(ErrorKind::kInternal, "recoloring: a color class is not 2-regular after fusing");
      first[c] = kNil;
    }
  };
  auto by_head = [](std::size_t t) { return static_cast<std::uint32_t>(t); };
  auto by_tail = [&](std::size_t t) {
    constexpr std::size_t kAhead = 32;
    if (t + kAhead < m) __builtin_prefetch(&records[out_record[t + kAhead]]);
    return out_record[t];
  };

  if (levels > 0) {
    for (std::size_t base = 0; base < m; base += 2) link_span(base, 1, by_head, &Record::in);
  }
  for (unsigned j = levels; j-- > 0;) {
    const unsigned shift = levels - j;
    const std::size_t half = k >> (j + 1);

    for (std::size_t base = 0; base < m; base += 2 * half) link_span(base, half, by_tail, &Record::out);

    ParityForest forest;
    {
      // Each walker launches from its own slice of the records; neighboring
      // records tend to share a cycle, and walkers starting side by side
      // would only collide with each other.
      std::uint32_t at[kWalkers], label[kWalkers], parity[kWalkers];
      std::size_t scan[kWalkers], stop[kWalkers];
      bool busy[kWalkers] = {};
      for (int w = 0; w < kWalkers; ++w) {
        scan[w] = m * w / kWalkers;
        stop[w] = m * (w + 1) / kWalkers;
      }
      auto launch = [&](int w) {
        while (scan[w] < stop[w] && records[scan[w]].label != kNoLabel) ++scan[w];
        if (scan[w] == stop[w]) return false;
        Record& r = records[scan[w]];
        label[w] = forest.add();
        r.label = label[w];
        r.parity = 0;
        // Walkers may run around a cycle in either direction. Linking the
        // segment behind the start here, and the one ahead on collision,
        // joins every pair of adjacent segments from one side or the other.
        const Record& behind = records[r.out];
        if (behind.label != kNoLabel) forest.unite(label[w], behind.label, static_cast<std::uint8_t>(1 ^ behind.parity));
        at[w] = r.in;
        parity[w] = 1;
        __builtin_prefetch(&records[at[w]]);
        return true;
      };
      int running = 0;
      for (int w = 0; w < kWalkers; ++w) running += (busy[w] = launch(w));
      while (running > 0) {
        for (int w = 0; w < kWalkers; ++w) {
          if (!busy[w]) continue;
          Record& r = records[at[w]];
          if (r.label == kNoLabel) {
            r.label = label[w];
            r.parity = static_cast<std::uint16_t>(parity[w]);
            at[w] = parity[w] == 0 ? r.in : r.out;
            parity[w] ^= 1;
            __builtin_prefetch(&records[at[w]]);
            continue;
          }
          if (r.label != label[w]) forest.unite(label[w], r.label, static_cast<std::uint8_t>(parity[w] ^ r.parity));
          if (!(busy[w] = launch(w))) --running;
        }
      }
    }

    // Flatten labels, then find each cycle's smallest arc, its parity and
    // its color (shared by all its arcs).
    std::vector<std::uint32_t> root_of(forest.size());
    std::vector<std::uint8_t> offset(forest.size());
    for (std::uint32_t l = 0; l < forest.size(); ++l) std::tie(root_of[l], offset[l]) = forest.find(l);
    std::vector<std::uint32_t> min_arc(forest.size(), kNil);
    std::vector<std::uint8_t> min_parity(forest.size());
    std::vector<std::uint16_t> cycle_color(forest.size());
    std::vector<std::uint32_t> cycles;
    for (std::uint32_t l = 0; l < forest.size(); ++l) {
      if (root_of[l] == l) cycles.push_back(l);
    }
    for (std::uint32_t p = 0; p < m; ++p) {
      Record& r = records[p];
      const std::uint32_t root = root_of[r.label];
      r.parity ^= offset[r.label];
      r.label = root;
      cycle_color[root] = r.color;
      if (in_order[p] < min_arc[root]) {
        min_arc[root] = in_order[p];
        min_parity[root] = static_cast<std::uint8_t>(r.parity);
      }
    }
    auto draw_order = [](std::vector<std::uint32_t>& items, auto key) {
      std::sort(items.begin(), items.end(), [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });
    };
    draw_order(cycles, [&](std::uint32_t l) { return (std::uint64_t{cycle_color[l]} << 32) | min_arc[l]; });

    std::vector<std::uint8_t> flip(forest.size());
    if (options.flips == FlipGranularity::kPerComponent) {
      // One bit per component of each class, drawn in the same order.
      auto node = [&](std::uint32_t endpoint, const Record& r) {
        return static_cast<std::uint32_t>((endpoint >> shift) * half + r.color);
      };
      DisjointSets components(m / 2);
      for (std::uint32_t p = 0; p < m; ++p) components.unite(node(tail_of[p], records[p]), node(p, records[p]));
      std::vector<std::uint32_t> comp_min(m / 2, kNil);
      std::vector<std::uint16_t> comp_color(m / 2);
      for (std::uint32_t p = 0; p < m; ++p) {
        const std::uint32_t root = components.find(node(p, records[p]));
        comp_min[root] = std::min(comp_min[root], in_order[p]);
        comp_color[root] = records[p].color;
      }
      std::vector<std::uint32_t> comps;
      for (std::uint32_t x = 0; x < m / 2; ++x) {
        if (comp_min[x] != kNil) comps.push_back(x);
      }
      draw_order(comps, [&](std::uint32_t x) { return (std::uint64_t{comp_color[x]} << 32) | comp_min[x]; });
      std::vector<std::uint8_t> comp_bit(m / 2);
      for (std::uint32_t x : comps) comp_bit[x] = rng.fair_bit() ? 1 : 0;
      for (std::uint32_t p = 0; p < m; ++p) {
        flip[records[p].label] = comp_bit[components.find(node(p, records[p]))];
      }
    } else {
      for (std::uint32_t l : cycles) flip[l] = rng.fair_bit() ? 1 : 0;
    }

    // Recolor, reset the walk labels, and link partners by head for the
    // next level down, one next-level vertex at a time.
    const std::size_t next_half = 2 * half;
    const std::size_t step = j > 0 ? 2 * next_half : m;
    for (std::size_t base = 0; base < m; base += step) {
      for (std::size_t p = base; p < base + step; ++p) {
        Record& r = records[p];
        if ((r.parity ^ min_parity[r.label]) == flip[r.label]) r.color = static_cast<std::uint16_t>(r.color + half);
        r.label = kNoLabel;
      }
      if (j > 0) link_span(base, next_half, by_head, &Record::in);
    }

    if (options.audit_levels) {
      audit_level(tail_of, head_of, record_colors(), shift, n << j, static_cast<unsigned>(2 * half), j);
    }
  }

  std::vector<Color> colors(m);
  for (std::uint32_t p = 0; p < m; ++p) colors[in_order[p]] = records[p].color + 1u;
  return CycleCoverColoring(k, std::move(colors));
}

BestCover best_cover(const Digraph& d, const CycleCoverColoring& col) {
  const auto counts = col.cycle_counts(d);
  if (counts.empty()) fail(ErrorKind::kInput, "best_cover: empty coloring");
  const auto best = std::min_element(counts.begin(), counts.end());
  const auto color = static_cast<Color>(best - counts.begin() + 1);
  return {color, col.cover(d, color)};
}

}  // namespace regtsp
