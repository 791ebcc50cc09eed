// Deterministic generators for property tests.
#ifndef MANTEL_TESTS_GENERATORS_HPP
#define MANTEL_TESTS_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mantel/cut_structure.hpp"
#include "mantel/graph.hpp"
#include "mantel/random.hpp"

namespace mantel::testing {

/// Small counter-based stream; each test owns one with a fixed key.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return keyed_hash(key_, counter_++); }
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return next() & 1u; }
  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[between(0, items.size() - 1)]; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// G(n, p) with n in [n_lo, n_hi] and p from `densities`.
inline Graph random_graph(Stream& s, std::size_t n_lo, std::size_t n_hi,
                          const std::vector<double>& densities) {
  return sample_gnp({s.between(n_lo, n_hi), s.pick(densities), s.next()});
}

/// G(n, p) conditioned on at most max_edges edges (resampled until it fits).
inline Graph random_graph_capped(Stream& s, std::size_t n_lo, std::size_t n_hi,
                                 const std::vector<double>& densities, std::size_t max_edges) {
  for (;;) {
    Graph g = random_graph(s, n_lo, n_hi, densities);
    if (g.num_edges() <= max_edges) return g;
  }
}

inline Cut random_cut(Stream& s, std::size_t n) {
  std::vector<std::uint8_t> side(n);
  for (auto& x : side) x = s.coin();
  return Cut(std::move(side));
}

/// Cut with |A| = floor(n/2) chosen uniformly.
inline Cut random_half_cut(Stream& s, std::size_t n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[s.between(0, i - 1)]);
  order.resize(n / 2);
  return Cut::from_a(n, order);
}

inline EdgeSet random_edge_subset(Stream& s, const Graph& g, double keep = 0.5) {
  EdgeSet f(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (s.unit() < keep) f.insert(e);
  }
  return f;
}

/// Distinct pairs (x, y) with x in [0, left) and y in [left, left + right).
inline std::vector<VertexPair> random_bipartite_pairs(Stream& s, std::size_t left,
                                                      std::size_t right, std::size_t count) {
  std::vector<VertexPair> all;
  for (Vertex x = 0; x < left; ++x) {
    for (std::size_t y = 0; y < right; ++y) all.emplace_back(x, static_cast<Vertex>(left + y));
  }
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[s.between(0, i - 1)]);
  all.resize(std::min(count, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace mantel::testing

#endif  // MANTEL_TESTS_GENERATORS_HPP
