#include <bit>
#include <functional>
#include <stdexcept>

#include "mantel/solvers.hpp"

namespace mantel {

namespace {

// Exhaustive search over edge subsets in canonical order. An edge is added
// only if the chosen set stays K_r-free; the only pruning is the trivial
// "remaining edges cannot beat the best" test.
class SubsetOracle {
 public:
  SubsetOracle(const Graph& g, std::size_t r) : g_(g), r_(r), rows_(g.num_vertices(), 0) {}

  std::size_t run() {
    recurse(0, 0);
    return best_;
  }

 private:
  // Does the chosen graph contain a K_{need} inside `cand`?
  bool has_clique(std::uint64_t cand, std::size_t need) const {
    if (need == 0) return true;
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      if (has_clique(cand & rows_[v], need - 1)) return true;
    }
    return false;
  }

  void recurse(std::size_t i, std::size_t chosen) {
    const std::size_t m = g_.num_edges();
    if (chosen + (m - i) <= best_) return;
    if (i == m) {
      best_ = chosen;
      return;
    }
    const Edge& e = g_.edge(static_cast<EdgeId>(i));
    if (!has_clique(rows_[e.u] & rows_[e.v], r_ - 2)) {
      rows_[e.u] |= std::uint64_t{1} << e.v;
      rows_[e.v] |= std::uint64_t{1} << e.u;
      recurse(i + 1, chosen + 1);
      rows_[e.u] &= ~(std::uint64_t{1} << e.v);
      rows_[e.v] &= ~(std::uint64_t{1} << e.u);
    }
    recurse(i + 1, chosen);
  }

  const Graph& g_;
  std::size_t r_;
  std::vector<std::uint64_t> rows_;
  std::size_t best_ = 0;
};

Graph compact(const Graph& g) {
  // Drops isolated vertices so vertex masks fit in 64 bits.
  std::vector<std::int64_t> id(g.num_vertices(), -1);
  Vertex next = 0;
  for (const Edge& e : g.edges()) {
    if (id[e.u] < 0) id[e.u] = next++;
    if (id[e.v] < 0) id[e.v] = next++;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    edges.push_back({static_cast<Vertex>(id[e.u]), static_cast<Vertex>(id[e.v])});
  return Graph(next, edges);
}

}  // namespace

std::size_t brute_force_kr_free(const Graph& g, std::size_t r) {
  if (r < 3) throw std::invalid_argument("brute_force_kr_free: r must be >= 3");
  if (g.num_edges() > 24) {
    throw std::invalid_argument("brute_force oracle refuses m > 24");
  }
  const Graph h = compact(g);
  return SubsetOracle(h, r).run();
}

std::size_t brute_force_t(const Graph& g) { return brute_force_kr_free(g, 3); }

std::size_t brute_force_b(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw std::invalid_argument("brute_force_b refuses n > 20");
  if (n <= 1) return 0;
  std::size_t best = 0;
  for (std::uint64_t side = 0; side < (std::uint64_t{1} << (n - 1)); ++side) {
    // Vertex n-1 is pinned to side 0.
    std::size_t cut = 0;
    for (const Edge& e : g.edges()) {
      cut += ((side >> e.u) ^ (side >> e.v)) & 1u;
    }
    best = std::max(best, cut);
  }
  return best;
}

std::size_t brute_force_multipartite(const Graph& g, std::size_t parts) {
  const std::size_t n = g.num_vertices();
  if (parts < 2) throw std::invalid_argument("parts must be >= 2");
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(parts);
  if (count > static_cast<double>(1u << 24)) {
    throw std::invalid_argument("brute_force_multipartite: instance too large");
  }
  std::vector<std::uint8_t> label(n, 0);
  std::size_t best = 0;
  for (;;) {
    std::size_t cut = 0;
    for (const Edge& e : g.edges()) cut += label[e.u] != label[e.v];
    best = std::max(best, cut);
    std::size_t i = 0;
    while (i < n && ++label[i] == parts) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

StabilityReport stability_check(const Graph& g, const EdgeSet& f,
                                double theta, double p,
                                const SolveLimits& limits) {
  if (f.width() != g.num_edges()) {
    throw std::invalid_argument("stability_check: edge set width mismatch");
  }
  if (!is_triangle_free(g, f)) {
    throw std::invalid_argument("stability_check: f is not triangle-free");
  }
  if (2 * f.size() < g.num_edges()) {
    throw std::invalid_argument("stability_check: |f| < |G|/2");
  }
  StabilityReport r;
  r.f_size = f.size();
  r.f_max_cut = max_cut(subgraph(g, f), limits).optimum;
  r.bipartite_distance = r.f_size - r.f_max_cut;
  r.theta = theta;
  r.p = p;
  const double n = static_cast<double>(g.num_vertices());
  r.allowance = theta * n * n * p;
  r.within_allowance = static_cast<double>(r.bipartite_distance) <= r.allowance;
  return r;
}

}  // namespace mantel
