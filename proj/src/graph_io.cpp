#include "mantel/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace mantel {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed-header";
    case ParseErrorKind::kMalformedLine: return "malformed-line";
    case ParseErrorKind::kEdgeCountMismatch: return "edge-count-mismatch";
    case ParseErrorKind::kVertexOutOfRange: return "vertex-out-of-range";
    case ParseErrorKind::kDuplicateEdge: return "duplicate-edge";
    case ParseErrorKind::kLoop: return "loop";
  }
  return "unknown";
}

namespace {

// Parses exactly two unsigned integers separated by blanks; nothing else.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  auto skip = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
  };
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t i = skip(0);
  auto r1 = std::from_chars(line.data() + i, line.data() + line.size(), a);
  if (r1.ec != std::errc{} || r1.ptr == line.data() + i) return false;
  std::size_t j = static_cast<std::size_t>(r1.ptr - line.data());
  std::size_t k = skip(j);
  if (k == j) return false;
  auto r2 = std::from_chars(line.data() + k, line.data() + line.size(), b);
  if (r2.ec != std::errc{} || r2.ptr == line.data() + k) return false;
  return skip(static_cast<std::size_t>(r2.ptr - line.data())) == line.size();
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (!std::getline(in, line) || !parse_pair(line, n, m)) {
    throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                     "expected header \"n m\"");
  }
  if (n > kMaxVertices || m > n * (n - (n > 0)) / 2) {
    throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                     "header values out of range");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<std::uint64_t> seen((n * n + 63) / 64, 0);
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (view.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_pair(view, u, v)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                       "expected \"u v\"");
    }
    if (u == v) throw ParseError(ParseErrorKind::kLoop, line_no, "loop edge");
    if (u >= n || v >= n) {
      throw ParseError(ParseErrorKind::kVertexOutOfRange, line_no,
                       "vertex out of range");
    }
    if (u > v) std::swap(u, v);
    const std::uint64_t key = u * n + v;
    if ((seen[key >> 6] >> (key & 63)) & 1u) {
      throw ParseError(ParseErrorKind::kDuplicateEdge, line_no,
                       "duplicate edge");
    }
    seen[key >> 6] |= std::uint64_t{1} << (key & 63);
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (edges.size() != m) {
    throw ParseError(ParseErrorKind::kEdgeCountMismatch, line_no,
                     "header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return Graph(n, edges);
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void format_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_graph(in);
}

void write_graph(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  format_graph(out, g);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mantel
