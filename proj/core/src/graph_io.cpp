#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "regtsp/graph.hpp"

namespace regtsp {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::kInput, "line " + std::to_string(line) + ": " + what);
}

// Splits a line into exactly two unsigned integers.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  std::uint64_t values[2];
  int count = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    if (count == 2) return false;
    const char* first = line.data() + i;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, values[count]);
    if (ec != std::errc() || ptr == first) return false;
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') return false;
    ++count;
  }
  if (count != 2) return false;
  a = values[0];
  b = values[1];
  return true;
}

bool is_blank_or_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (is_blank_or_comment(line)) {
      if (end == text.size()) break;
      continue;
    }
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, a, b)) parse_fail(line_no, "malformed line '" + std::string(line) + "'");
    if (!have_header) {
      if (a > std::numeric_limits<Vertex>::max() - 1) parse_fail(line_no, "vertex count too large");
      n = a;
      m = b;
      have_header = true;
      edges.reserve(std::min<std::uint64_t>(m, 1u << 26));
    } else {
      if (edges.size() == m) parse_fail(line_no, "more edge lines than the declared " + std::to_string(m));
      if (a >= n || b >= n) {
        parse_fail(line_no, "endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
      }
      if (a == b) parse_fail(line_no, "self-loop at vertex " + std::to_string(a));
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
      edge_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_header) parse_fail(line_no, "missing 'n m' header");
  if (edges.size() != m) {
    parse_fail(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  try {
    return Graph::from_edges(static_cast<Vertex>(n), std::move(edges));
  } catch (const EdgeError& e) {
    parse_fail(edge_lines[e.edge_index()], e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInput, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::string out;
  out.reserve(edges.size() * 12 + 32);
  out += std::to_string(g.num_vertices());
  out += ' ';
  out += std::to_string(edges.size());
  out += '\n';
  for (const Edge& e : edges) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kInput, "cannot write " + path);
  out << format_graph(g);
}

}  // namespace regtsp
