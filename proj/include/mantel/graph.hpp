#ifndef MANTEL_GRAPH_HPP
#define MANTEL_GRAPH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mantel {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Triangle = std::array<Vertex, 3>;

inline constexpr std::size_t kMaxVertices = 4096;

/// Undirected simple graph on vertices 0..n-1 with bit-vector adjacency rows.
///
/// Immutable after construction. Edges are indexed in lexicographic order of
/// (min endpoint, max endpoint); every EdgeSet refers to that ordering.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Throws std::invalid_argument on loops,
  /// duplicate edges, out-of-range endpoints or n > kMaxVertices.
  Graph(std::size_t n, std::span<const Edge> edges);

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph empty(std::size_t n) { return Graph(n, {}); }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t words_per_row() const { return words_; }

  bool has_edge(Vertex u, Vertex v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1u;
  }

  std::span<const std::uint64_t> row(Vertex u) const {
    return {adjacency_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  std::size_t degree(Vertex u) const { return degree_[u]; }
  /// |N(u) ∩ N(v)|.
  std::size_t codegree(Vertex u, Vertex v) const;
  /// Number of neighbours of u inside the vertex mask (words_per_row words).
  std::size_t degree_into(Vertex u, std::span<const std::uint64_t> mask) const;

  std::vector<Vertex> neighbors(Vertex u) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  /// Canonical index of edge {u,v}; precondition has_edge(u, v).
  EdgeId edge_id(Vertex u, Vertex v) const;

  /// Mask of vertices with 64-bit rows; only valid when n <= 64.
  std::uint64_t row64(Vertex u) const { return adjacency_[u * words_]; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adjacency_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
  std::vector<EdgeId> row_start_;
};

/// Subset of a host graph's edges as an m-bit mask over the canonical order.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t width)
      : width_(width), bits_((width + 63) / 64, 0) {}

  static EdgeSet all(const Graph& g);
  static EdgeSet from_ids(const Graph& g, std::span<const EdgeId> ids);

  std::size_t width() const { return width_; }
  bool contains(EdgeId e) const { return (bits_[e >> 6] >> (e & 63)) & 1u; }
  void insert(EdgeId e) { bits_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(EdgeId e) { bits_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<EdgeId> ids() const;

  EdgeSet& operator|=(const EdgeSet& other);
  EdgeSet& operator&=(const EdgeSet& other);
  /// Set difference.
  EdgeSet& operator-=(const EdgeSet& other);

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> bits_;
};

EdgeSet operator|(EdgeSet a, const EdgeSet& b);
EdgeSet operator&(EdgeSet a, const EdgeSet& b);
EdgeSet operator-(EdgeSet a, const EdgeSet& b);

/// Spanning subgraph of g with edge set f. Vertex count is preserved.
Graph subgraph(const Graph& g, const EdgeSet& f);

/// Edge set of g restricted to pairs present in h (same vertex count).
EdgeSet edges_of(const Graph& g, const Graph& h);

/// Vertex-disjoint union; vertices of b are shifted by a.num_vertices().
Graph disjoint_union(const Graph& a, const Graph& b);

/// Parameters of an Erdős–Rényi sample.
struct GnpSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Samples G(n, p). Pair {u,v} of lexicographic rank r is present iff a
/// counter-based draw keyed by (seed, r) falls below p, so the result does
/// not depend on iteration order. Throws std::invalid_argument on n == 0,
/// n > kMaxVertices or p outside [0, 1].
Graph sample_gnp(const GnpSpec& spec);

/// Uniform double in [0, 1) from the counter-based stream (seed, counter).
double uniform_at(std::uint64_t seed, std::uint64_t counter);

/// All triangles {x < y < z}, sorted lexicographically.
std::vector<Triangle> triangles(const Graph& g);

/// Triangles reported as triples of canonical edge ids (xy, xz, yz).
std::vector<std::array<EdgeId, 3>> triangle_edges(const Graph& g);

/// All k-vertex cliques as sorted vertex lists, in lexicographic order.
/// k = 1 gives the vertices, k = 2 the edges.
std::vector<std::vector<Vertex>> cliques_of_size(const Graph& g, std::size_t k);

/// Edges contained in no triangle of g.
EdgeSet edges_in_no_triangle(const Graph& g);

struct MinMaxMean {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct DegreeCodegreeStats {
  MinMaxMean degree;
  MinMaxMean codegree;
  /// Filled only when a density p is supplied.
  bool has_windows = false;
  double np = 0.0;
  double np2 = 0.0;
  double epsilon = 0.0;
  double degree_slack = 0.0;
  std::size_t degree_outside = 0;
  std::size_t codegree_outside = 0;
  bool degree_window_holds = false;
  bool codegree_window_holds = false;
};

/// Degree and codegree summary. With p supplied, also counts vertices with
/// d(x) outside (1 ± degree_slack)np and pairs with d(x,y) outside
/// (1 ± epsilon)np². These are reported, never enforced.
DegreeCodegreeStats degree_codegree_stats(const Graph& g);
DegreeCodegreeStats degree_codegree_stats(const Graph& g, double p,
                                          double epsilon,
                                          double degree_slack = 0.1);

/// Connected components; label[v] in 0..count-1 ordered by smallest vertex.
struct Components {
  std::size_t count = 0;
  std::vector<std::uint32_t> label;
};
Components connected_components(const Graph& g);

/// Two-colouring of the spanning subgraph f; nullopt when f has an odd cycle.
std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g,
                                                      const EdgeSet& f);
bool is_bipartite(const Graph& g, const EdgeSet& f);
bool is_triangle_free(const Graph& g, const EdgeSet& f);

/// Some odd cycle of the spanning subgraph f as a closed vertex walk
/// v0, v1, ..., vk (v0 repeated implicitly); empty if f is bipartite.
std::vector<Vertex> find_odd_cycle(const Graph& g, const EdgeSet& f);

}  // namespace mantel

#endif  // MANTEL_GRAPH_HPP
