// Named small graphs.
#ifndef MANTEL_TESTS_FIXTURES_HPP
#define MANTEL_TESTS_FIXTURES_HPP

#include <vector>

#include "mantel/graph.hpp"

namespace mantel::testing {

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    const Vertex a = i, b = (i + 1) % 5;
    e.push_back({std::min(a, b), std::max(a, b)});                       // outer cycle
    e.push_back({i, static_cast<Vertex>(5 + i)});                         // spokes
    const Vertex c = 5 + i, d = 5 + (i + 2) % 5;
    e.push_back({std::min(c, d), std::max(c, d)});                        // inner pentagram
  }
  return Graph(10, e);
}

/// K_{2,2,2}: all pairs except the three antipodal ones.
inline Graph octahedron() {
  std::vector<Edge> e;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v)
      if (v != u + 3) e.push_back({u, v});
  return Graph(6, e);
}

/// Two triangles sharing vertex 0.
inline Graph bowtie() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}};
  return Graph(5, e);
}

/// K_{1,leaves} with centre 0.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, e);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (std::size_t v = a; v < a + b; ++v) e.push_back({u, static_cast<Vertex>(v)});
  return Graph(a + b, e);
}

}  // namespace mantel::testing

#endif  // MANTEL_TESTS_FIXTURES_HPP
