#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mantel/homology.hpp"
#include "mantel/random.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace mantel {
namespace {

using testing::Stream;

testing::DenseGf2 to_dense(const Gf2Matrix& m) {
  testing::DenseGf2 d(m.num_rows(), std::vector<std::uint8_t>(m.num_cols(), 0));
  for (std::size_t r = 0; r < m.num_rows(); ++r)
    for (std::uint32_t c : m.row(r)) d[r][c] = 1;
  return d;
}

Gf2Matrix random_matrix(Stream& s, std::size_t rows, std::size_t cols, double density) {
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::uint32_t> support;
    for (std::uint32_t c = 0; c < cols; ++c)
      if (s.unit() < density) support.push_back(c);
    m.set_row(r, support);
  }
  return m;
}

TEST(Gf2, SetRowValidates) {
  Gf2Matrix m(2, 4);
  m.set_row(0, {3, 1});
  EXPECT_EQ(m.row(0), (std::vector<std::uint32_t>{1, 3}));
  EXPECT_TRUE(m.get(0, 3));
  EXPECT_FALSE(m.get(0, 2));
  EXPECT_THROW(m.set_row(1, {1, 1}), std::invalid_argument);
  EXPECT_THROW(m.set_row(1, {4}), std::out_of_range);
}

TEST(Gf2, MultiplyCancelsPairs) {
  Gf2Matrix a(1, 2), b(2, 2);
  a.set_row(0, {0, 1});
  b.set_row(0, {0, 1});
  b.set_row(1, {1});
  const Gf2Matrix c = a.multiply(b);
  EXPECT_EQ(c.row(0), (std::vector<std::uint32_t>{0}));
}

TEST(Gf2Property, RankMatchesGaussJordan) {
  Stream s(60);
  for (int i = 0; i < 200; ++i) {
    const std::size_t rows = s.between(0, 25), cols = s.between(1, 25);
    const Gf2Matrix m = random_matrix(s, rows, cols, s.pick(std::vector<double>{0.1, 0.3, 0.6}));
    EXPECT_EQ(m.rank(), testing::naive_rank(to_dense(m)));
    EXPECT_EQ(m.transpose().rank(), m.rank());
  }
}

TEST(Gf2Property, NullSpaceIsAKernelBasis) {
  Stream s(61);
  for (int i = 0; i < 150; ++i) {
    const std::size_t rows = s.between(1, 20), cols = s.between(1, 20);
    const Gf2Matrix m = random_matrix(s, rows, cols, 0.3);
    const auto basis = m.null_space();
    EXPECT_EQ(basis.size(), cols - m.rank());
    Gf2Matrix vectors(basis.size(), cols);
    for (std::size_t j = 0; j < basis.size(); ++j) vectors.set_row(j, basis[j]);
    EXPECT_TRUE(m.multiply(vectors.transpose()).is_zero());
    EXPECT_EQ(vectors.rank(), basis.size());
  }
}

TEST(CliqueComplex, FacesAndIndexing) {
  const CliqueComplex cx(Graph::complete(5), 3);
  EXPECT_EQ(cx.top_dimension(), 3u);
  EXPECT_EQ(cx.num_faces(0), 5u);
  EXPECT_EQ(cx.num_faces(1), 10u);
  EXPECT_EQ(cx.num_faces(2), 10u);
  EXPECT_EQ(cx.num_faces(3), 5u);
  for (std::size_t i = 0; i < cx.num_faces(2); ++i) EXPECT_EQ(cx.index_of(cx.face(2, i)), i);
  const std::vector<Vertex> missing{0, 1, 7};
  EXPECT_EQ(cx.index_of(missing), SIZE_MAX);
  EXPECT_TRUE(cx.boundary_squares_to_zero());
  EXPECT_EQ(cx.top_dimension(), 3u);
  EXPECT_EQ(CliqueComplex(Graph::cycle(6), 3).top_dimension(), 1u);
}

TEST(CliqueComplex, RejectsOversizedInput) {
  EXPECT_THROW(CliqueComplex(Graph::complete(61), 1), InstanceTooLarge);
  HomologyLimits tight;
  tight.max_faces = 100;
  EXPECT_THROW(CliqueComplex(Graph::complete(20), 3, tight), InstanceTooLarge);
}

TEST(Betti, Examples) {
  EXPECT_EQ(betti_z2(Graph::cycle(5), 1), 1u);
  EXPECT_EQ(betti_z2(Graph::complete(4), 1), 0u);
  const Graph oct = testing::octahedron();
  EXPECT_EQ(betti_z2(oct, 2), 1u);
  const CliqueComplex cx(oct, 3);
  EXPECT_EQ(cx.num_faces(0), 6u);
  EXPECT_EQ(cx.num_faces(1), 12u);
  EXPECT_EQ(cx.num_faces(2), 8u);
  EXPECT_EQ(cx.euler_characteristic(), 2);
  EXPECT_EQ(cx.betti_numbers(), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Betti, ReducedDimensionZero) {
  EXPECT_EQ(betti_z2(Graph::complete(5), 0), 0u);
  EXPECT_EQ(betti_z2(Graph::empty(4), 0), 3u);
  EXPECT_EQ(betti_z2(disjoint_union(Graph::cycle(5), Graph::complete(3)), 0), 1u);
}

TEST(Betti, PetersenHasSixIndependentCycles) {
  EXPECT_EQ(betti_z2(testing::petersen(), 1), 15u - 10u + 1u);
}

TEST(BettiProperty, EulerIdentityAndBoundaryComposition) {
  Stream s(62);
  for (int i = 0; i < 80; ++i) {
    const Graph g = testing::random_graph(s, 1, 18, {0.3, 0.5, 0.8});
    const CliqueComplex cx(g, 8);
    EXPECT_TRUE(cx.boundary_squares_to_zero());
    const auto betti = cx.betti_numbers();
    long long alternating = 0;
    for (std::size_t k = 0; k < betti.size(); ++k)
      alternating += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(betti[k]);
    // With k_max above the clique number the complex is complete, so the
    // identity holds exactly.
    EXPECT_EQ(alternating, cx.euler_characteristic());
    EXPECT_EQ(betti[0], connected_components(g).count);
  }
}

TEST(BettiProperty, BoundaryRanksMatchGaussJordan) {
  Stream s(63);
  for (int i = 0; i < 40; ++i) {
    const Graph g = testing::random_graph(s, 3, 14, {0.4, 0.7});
    const CliqueComplex cx(g, 3);
    for (std::size_t k = 1; k <= cx.top_dimension(); ++k) {
      const Gf2Matrix d = cx.boundary(k);
      EXPECT_EQ(d.rank(), testing::naive_rank(to_dense(d)));
    }
  }
}

TEST(BettiProperty, AdditiveOverDisjointUnion) {
  Stream s(64);
  for (int i = 0; i < 40; ++i) {
    const Graph a = testing::random_graph(s, 1, 12, {0.3, 0.6});
    const Graph b = testing::random_graph(s, 1, 12, {0.3, 0.6});
    const Graph u = disjoint_union(a, b);
    for (std::size_t k = 1; k <= 2; ++k) {
      EXPECT_EQ(betti_z2(u, k), betti_z2(a, k) + betti_z2(b, k));
    }
  }
}

TEST(EvenSpace, Examples) {
  const Graph c6 = Graph::cycle(6);
  EXPECT_EQ(triangle_even_space(c6).dimension, 6u);
  EXPECT_EQ(triangle_even_space(Graph::complete(3)).dimension, 2u);
  EXPECT_EQ(triangle_even_space(Graph::complete(5)).dimension, 4u);
  EXPECT_EQ(triangle_even_space(Graph::cycle(5)).dimension, 5u);
}

TEST(EvenSpaceProperty, DimensionAndMembership) {
  Stream s(65);
  for (int i = 0; i < 80; ++i) {
    const Graph g = testing::random_graph(s, 2, 16, {0.3, 0.6, 0.9});
    const EvenSpace w = triangle_even_space(g);
    const auto tri = triangle_edges(g);
    // dim W = m - rank of the triangle-edge incidence matrix.
    testing::DenseGf2 inc(tri.size(), std::vector<std::uint8_t>(g.num_edges(), 0));
    for (std::size_t t = 0; t < tri.size(); ++t)
      for (EdgeId e : tri[t]) inc[t][e] = 1;
    EXPECT_EQ(w.dimension, g.num_edges() - testing::naive_rank(inc));
    EXPECT_EQ(w.basis.size(), w.dimension);
    for (const EdgeSet& v : w.basis) {
      for (const auto& t : tri) {
        EXPECT_EQ((v.contains(t[0]) + v.contains(t[1]) + v.contains(t[2])) % 2, 0);
      }
    }
  }
}

TEST(EvenSpaceProperty, CutSpaceIsContained) {
  Stream s(66);
  for (int i = 0; i < 60; ++i) {
    const Graph g = testing::random_graph(s, 2, 16, {0.3, 0.6, 0.9});
    const EvenSpace w = triangle_even_space(g);
    const auto tri = triangle_edges(g);
    const Cut pi = testing::random_cut(s, g.num_vertices());
    // Every cut meets every triangle in 0 or 2 edges.
    for (const auto& t : tri) {
      int crossing = 0;
      for (EdgeId e : t) {
        const Edge ed = g.edge(e);
        crossing += pi.in_a(ed.u) != pi.in_a(ed.v);
      }
      EXPECT_EQ(crossing % 2, 0);
    }
    EXPECT_GE(w.dimension, g.num_vertices() - connected_components(g).count);
  }
}

TEST(H1CutEvent, Examples) {
  const auto k5 = check_h1_cut_event(Graph::complete(5));
  EXPECT_TRUE(k5.every_edge_in_triangle);
  EXPECT_TRUE(k5.h1_zero);
  EXPECT_TRUE(k5.even_space_is_cut_space);
  const auto c5 = check_h1_cut_event(Graph::cycle(5));
  EXPECT_FALSE(c5.every_edge_in_triangle);
  EXPECT_FALSE(c5.h1_zero);
  EXPECT_FALSE(c5.even_space_is_cut_space);
  EXPECT_EQ(c5.betti1, 1u);
  EXPECT_EQ(c5.even_dimension, 5u);
  EXPECT_EQ(c5.cut_dimension, 4u);
}

TEST(H1CutEvent, SampledGraph) {
  const Graph g = sample_gnp({40, 0.7, 6});
  const auto r = check_h1_cut_event(g);
  EXPECT_EQ(r.h1_zero, r.even_space_is_cut_space);
  EXPECT_EQ(r.betti1, betti_z2(g, 1));
  EXPECT_EQ(r.every_edge_in_triangle, edges_in_no_triangle(g).size() == 0);
}

TEST(H1CutEventProperty, RoutesAgree) {
  Stream s(67);
  int zero = 0, nonzero = 0;
  for (int i = 0; i < 150; ++i) {
    const Graph g = testing::random_graph(s, 3, 20, {0.2, 0.4, 0.6, 0.8});
    const auto r = check_h1_cut_event(g);
    EXPECT_EQ(r.h1_zero, r.even_space_is_cut_space);
    EXPECT_EQ(r.h1_zero, r.betti1 == 0);
    (r.h1_zero ? zero : nonzero)++;
  }
  EXPECT_GT(zero, 0);
  EXPECT_GT(nonzero, 0);
}

TEST(HomologySweep, Threshold) {
  EXPECT_NEAR(homology_threshold(30, 1), std::sqrt(1.5 * std::log(30.0) / 30.0), 1e-12);
  EXPECT_NEAR(homology_threshold(30, 0), std::log(30.0) / 30.0, 1e-12);
}

TEST(HomologySweep, FullDensityAlwaysVanishes) {
  for (std::size_t k = 0; k <= 2; ++k) {
    const auto sweep = homology_sweep(12, k, {1.0}, 10, 5, 1);
    ASSERT_EQ(sweep.rows.size(), 1u);
    EXPECT_EQ(sweep.rows[0].zero_count, 10u);
    EXPECT_DOUBLE_EQ(sweep.rows[0].fraction, 1.0);
  }
}

TEST(HomologySweep, DimensionZeroMatchesConnectivity) {
  const std::size_t n = 60;
  const double p = 3.0 * std::log(60.0) / 60.0;
  const auto sweep = homology_sweep(n, 0, {p}, 40, 9, 2);
  std::size_t connected = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    connected += connected_components(sample_gnp({n, p, derive_seed(9, i)})).count == 1;
  }
  EXPECT_EQ(sweep.rows[0].zero_count, connected);
  EXPECT_GE(sweep.rows[0].fraction, 0.8);
}

TEST(HomologySweep, DeterministicAcrossThreadCounts) {
  const std::vector<double> grid{0.3, 0.45, 0.6};
  const auto a = homology_sweep(20, 1, grid, 20, 11, 1);
  const auto b = homology_sweep(20, 1, grid, 20, 11, 4);
  std::ostringstream sa, sb;
  write_homology_csv(sa, a);
  write_homology_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(HomologySweep, CsvFormat) {
  const auto sweep = homology_sweep(10, 1, {0.5, 0.9}, 6, 3, 1);
  std::ostringstream out;
  write_homology_csv(out, sweep);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p,trials,h_k_zero_count,fraction,wilson_lo,wilson_hi");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream fields(line);
    std::string cell;
    int col = 0;
    while (std::getline(fields, cell, ',')) {
      if (col == 0 || col >= 3) {
        const auto dot = cell.find('.');
        ASSERT_NE(dot, std::string::npos) << cell;
        EXPECT_EQ(cell.size() - dot - 1, 6u) << cell;
      }
      ++col;
    }
    EXPECT_EQ(col, 6);
  }
  EXPECT_EQ(rows, 2);
}

TEST(HomologySweep, RejectsLargeComplexes) {
  EXPECT_THROW(homology_sweep(61, 1, {0.5}, 1, 1, 1), InstanceTooLarge);
  EXPECT_NO_THROW(homology_sweep(200, 0, {0.05}, 2, 1, 1));
}

}  // namespace
}  // namespace mantel
