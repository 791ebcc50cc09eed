#include "mantel/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mantel/random.hpp"

namespace mantel {

Graph::Graph(std::size_t n, std::span<const Edge> edges)
    : n_(n), words_((n + 63) / 64), adjacency_(n * ((n + 63) / 64), 0),
      degree_(n, 0), row_start_(n + 1, 0) {
  if (n > kMaxVertices) {
    throw std::invalid_argument("graph: n exceeds " +
                                std::to_string(kMaxVertices));
  }
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("graph: vertex out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("graph: loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    auto& word = adjacency_[e.u * words_ + (e.v >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (e.v & 63);
    if (word & bit) throw std::invalid_argument("graph: duplicate edge");
    word |= bit;
    adjacency_[e.v * words_ + (e.u >> 6)] |= std::uint64_t{1} << (e.u & 63);
    ++degree_[e.u];
    ++degree_[e.v];
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) ++row_start_[e.u + 1];
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n < 3");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    edges.push_back({u, static_cast<Vertex>((u + 1) % n)});
  return Graph(n, edges);
}

std::size_t Graph::codegree(Vertex u, Vertex v) const {
  auto a = row(u);
  auto b = row(v);
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

std::size_t Graph::degree_into(Vertex u,
                               std::span<const std::uint64_t> mask) const {
  auto a = row(u);
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & mask[w]);
  return c;
}

std::vector<Vertex> Graph::neighbors(Vertex u) const {
  std::vector<Vertex> out;
  out.reserve(degree_[u]);
  auto r = row(u);
  for (std::size_t w = 0; w < words_; ++w) {
    for (std::uint64_t bits = r[w]; bits; bits &= bits - 1) {
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
    }
  }
  return out;
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto r = row(u);
  std::size_t rank = 0;
  const std::size_t vw = v >> 6;
  for (std::size_t w = u >> 6; w < vw; ++w) rank += std::popcount(r[w]);
  rank += std::popcount(r[vw] & ((std::uint64_t{1} << (v & 63)) - 1));
  // Subtract neighbours below or at u in u's first word.
  const std::size_t uw = u >> 6;
  const std::uint64_t upto_u =
      (u & 63) == 63 ? ~std::uint64_t{0}
                     : ((std::uint64_t{1} << ((u & 63) + 1)) - 1);
  rank -= std::popcount(r[uw] & upto_u);
  return static_cast<EdgeId>(row_start_[u] + rank);
}

EdgeSet EdgeSet::all(const Graph& g) {
  EdgeSet s(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) s.insert(e);
  return s;
}

EdgeSet EdgeSet::from_ids(const Graph& g, std::span<const EdgeId> ids) {
  EdgeSet s(g.num_edges());
  for (EdgeId e : ids) {
    if (e >= g.num_edges()) throw std::out_of_range("edge id out of range");
    s.insert(e);
  }
  return s;
}

std::size_t EdgeSet::size() const {
  std::size_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t b = bits_[w]; b; b &= b - 1) {
      out.push_back(static_cast<EdgeId>(w * 64 + std::countr_zero(b)));
    }
  }
  return out;
}

namespace {
void require_same_width(const EdgeSet& a, const EdgeSet& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("edge sets over different hosts");
  }
}
}  // namespace

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  require_same_width(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

EdgeSet& EdgeSet::operator&=(const EdgeSet& other) {
  require_same_width(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

EdgeSet& EdgeSet::operator-=(const EdgeSet& other) {
  require_same_width(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~other.bits_[i];
  return *this;
}

EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }

Graph subgraph(const Graph& g, const EdgeSet& f) {
  if (f.width() != g.num_edges()) {
    throw std::invalid_argument("subgraph: edge set width mismatch");
  }
  std::vector<Edge> edges;
  for (EdgeId e : f.ids()) edges.push_back(g.edge(e));
  return Graph(g.num_vertices(), edges);
}

EdgeSet edges_of(const Graph& g, const Graph& h) {
  if (g.num_vertices() != h.num_vertices()) {
    throw std::invalid_argument("edges_of: vertex count mismatch");
  }
  EdgeSet s(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (h.has_edge(g.edge(e).u, g.edge(e).v)) s.insert(e);
  }
  return s;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<Vertex>(a.num_vertices());
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.num_vertices() + b.num_vertices(), edges);
}

double uniform_at(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(keyed_hash(seed, counter) >> 11) * 0x1.0p-53;
}

Graph sample_gnp(const GnpSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("sample_gnp: n must be >= 1");
  if (spec.n > kMaxVertices) {
    throw std::invalid_argument("sample_gnp: n exceeds " +
                                std::to_string(kMaxVertices));
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw std::invalid_argument("sample_gnp: p must lie in [0, 1]");
  }
  std::vector<Edge> edges;
  std::uint64_t rank = 0;
  for (Vertex u = 0; u < spec.n; ++u) {
    for (Vertex v = u + 1; v < spec.n; ++v, ++rank) {
      if (uniform_at(spec.seed, rank) < spec.p) edges.push_back({u, v});
    }
  }
  return Graph(spec.n, edges);
}

std::vector<Triangle> triangles(const Graph& g) {
  std::vector<Triangle> out;
  const std::size_t words = g.words_per_row();
  std::vector<std::uint64_t> common(words);
  for (const Edge& e : g.edges()) {
    auto a = g.row(e.u);
    auto b = g.row(e.v);
    for (std::size_t w = 0; w < words; ++w) common[w] = a[w] & b[w];
    // Only z > v, so each triangle is reported once from its smallest edge.
    for (std::size_t w = e.v >> 6; w < words; ++w) {
      std::uint64_t bits = common[w];
      if (w == (e.v >> 6)) {
        bits &= (e.v & 63) == 63 ? 0 : ~((std::uint64_t{2} << (e.v & 63)) - 1);
      }
      for (; bits; bits &= bits - 1) {
        out.push_back(
            {e.u, e.v, static_cast<Vertex>(w * 64 + std::countr_zero(bits))});
      }
    }
  }
  return out;
}

std::vector<std::array<EdgeId, 3>> triangle_edges(const Graph& g) {
  auto tris = triangles(g);
  std::vector<std::array<EdgeId, 3>> out;
  out.reserve(tris.size());
  for (const auto& t : tris) {
    out.push_back({g.edge_id(t[0], t[1]), g.edge_id(t[0], t[2]),
                   g.edge_id(t[1], t[2])});
  }
  return out;
}

namespace {

void extend_cliques(const Graph& g, std::vector<Vertex>& current,
                    std::vector<std::uint64_t>& candidates, std::size_t k,
                    std::vector<std::vector<Vertex>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  const std::size_t words = g.words_per_row();
  std::vector<std::uint64_t> next(words);
  for (std::size_t w = 0; w < words; ++w) {
    for (std::uint64_t bits = candidates[w]; bits; bits &= bits - 1) {
      const auto v = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
      auto r = g.row(v);
      bool any = current.size() + 1 == k;
      // Candidates after v must be above v to list each clique once.
      for (std::size_t x = 0; x < words; ++x) {
        std::uint64_t above = x < (v >> 6)    ? 0
                              : x > (v >> 6) ? ~std::uint64_t{0}
                                              : ~((std::uint64_t{2} << (v & 63)) - 1);
        next[x] = candidates[x] & r[x] & above;
        any = any || next[x] != 0;
      }
      if (!any) continue;
      current.push_back(v);
      extend_cliques(g, current, next, k, out);
      current.pop_back();
    }
  }
}

}  // namespace

std::vector<std::vector<Vertex>> cliques_of_size(const Graph& g,
                                                 std::size_t k) {
  std::vector<std::vector<Vertex>> out;
  if (k == 0) return out;
  std::vector<std::uint64_t> all(g.words_per_row(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    all[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  std::vector<Vertex> current;
  extend_cliques(g, current, all, k, out);
  return out;
}

EdgeSet edges_in_no_triangle(const Graph& g) {
  EdgeSet s(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.codegree(g.edge(e).u, g.edge(e).v) == 0) s.insert(e);
  }
  return s;
}

namespace {

MinMaxMean summarize(const std::vector<double>& values) {
  MinMaxMean s;
  if (values.empty()) return s;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  return s;
}

}  // namespace

DegreeCodegreeStats degree_codegree_stats(const Graph& g) {
  DegreeCodegreeStats st;
  const std::size_t n = g.num_vertices();
  std::vector<double> deg(n);
  for (Vertex x = 0; x < n; ++x) deg[x] = static_cast<double>(g.degree(x));
  std::vector<double> codeg;
  codeg.reserve(n * (n - 1) / 2);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      codeg.push_back(static_cast<double>(g.codegree(x, y)));
  st.degree = summarize(deg);
  st.codegree = summarize(codeg);
  return st;
}

DegreeCodegreeStats degree_codegree_stats(const Graph& g, double p,
                                          double epsilon,
                                          double degree_slack) {
  DegreeCodegreeStats st = degree_codegree_stats(g);
  const std::size_t n = g.num_vertices();
  st.has_windows = true;
  st.epsilon = epsilon;
  st.degree_slack = degree_slack;
  st.np = static_cast<double>(n) * p;
  st.np2 = static_cast<double>(n) * p * p;
  for (Vertex x = 0; x < n; ++x) {
    const double d = static_cast<double>(g.degree(x));
    if (d < (1 - degree_slack) * st.np || d > (1 + degree_slack) * st.np)
      ++st.degree_outside;
    for (Vertex y = x + 1; y < n; ++y) {
      const double c = static_cast<double>(g.codegree(x, y));
      if (c < (1 - epsilon) * st.np2 || c > (1 + epsilon) * st.np2)
        ++st.codegree_outside;
    }
  }
  st.degree_window_holds = st.degree_outside == 0;
  st.codegree_window_holds = st.codegree_outside == 0;
  return st;
}

Components connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  Components c;
  c.label.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (c.label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(c.count++);
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (c.label[y] == std::numeric_limits<std::uint32_t>::max()) {
          c.label[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  return c;
}

namespace {

std::vector<std::vector<Vertex>> adjacency_lists(const Graph& g,
                                                 const EdgeSet& f) {
  if (f.width() != g.num_edges()) {
    throw std::invalid_argument("edge set width does not match graph");
  }
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (EdgeId e : f.ids()) {
    adj[g.edge(e).u].push_back(g.edge(e).v);
    adj[g.edge(e).v].push_back(g.edge(e).u);
  }
  return adj;
}

}  // namespace

std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g,
                                                      const EdgeSet& f) {
  auto adj = adjacency_lists(g, f);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> color(n, 2);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != 2) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (Vertex y : adj[x]) {
        if (color[y] == 2) {
          color[y] = color[x] ^ 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

bool is_bipartite(const Graph& g, const EdgeSet& f) {
  return two_coloring(g, f).has_value();
}

bool is_triangle_free(const Graph& g, const EdgeSet& f) {
  Graph h = subgraph(g, f);
  for (const Edge& e : h.edges()) {
    if (h.codegree(e.u, e.v) != 0) return false;
  }
  return true;
}

std::vector<Vertex> find_odd_cycle(const Graph& g, const EdgeSet& f) {
  auto adj = adjacency_lists(g, f);
  const std::size_t n = g.num_vertices();
  constexpr auto kNone = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> parent(n, kNone);
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (Vertex y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (depth[y] == depth[x]) {
          // BFS tree paths from x and y meet at their lowest common ancestor;
          // the two equal-length paths plus edge xy close an odd cycle.
          std::vector<Vertex> left{x};
          std::vector<Vertex> right{y};
          while (left.back() != right.back()) {
            left.push_back(parent[left.back()]);
            right.push_back(parent[right.back()]);
          }
          right.pop_back();
          std::vector<Vertex> cycle(left.rbegin(), left.rend());
          cycle.insert(cycle.end(), right.begin(), right.end());
          return cycle;
        }
      }
    }
  }
  return {};
}

}  // namespace mantel
