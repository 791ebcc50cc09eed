#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "mantel/cut_structure.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace mantel {
namespace {

using testing::Fraction;
using testing::Stream;

Cut first_half(std::size_t n) {
  std::vector<Vertex> a(n / 2);
  std::iota(a.begin(), a.end(), Vertex{0});
  return Cut::from_a(n, a);
}

EdgeSet edges_by_pairs(const Graph& g, const std::vector<Edge>& pairs) {
  EdgeSet f(g.num_edges());
  for (const Edge& e : pairs) f.insert(g.edge_id(e.u, e.v));
  return f;
}

TEST(ParamConfig, DerivedConstants) {
  const ParamConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.gamma_c(), 0.24);
  EXPECT_DOUBLE_EQ(cfg.alpha_prime(), 0.8 / 0.96);
  EXPECT_GT(cfg.vartheta(), 0.0);
  EXPECT_DOUBLE_EQ(cfg.tau(0.3), 0.3);
  EXPECT_DOUBLE_EQ(cfg.tau(0.001), 0.005);
  EXPECT_DOUBLE_EQ(ParamConfig::with_epsilon(0.05).K, 1600.0);
}

TEST(ParamConfig, RejectsInvalidConstants) {
  ParamConfig cfg;
  cfg.eta = 0.0021;  // above epsilon / 10
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ParamConfig{};
  cfg.eta = 0.002;  // exactly epsilon / 10
  EXPECT_NO_THROW(cfg.validate());
  cfg = ParamConfig{};
  cfg.alpha = 0.95;  // vartheta turns negative
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ParamConfig{};
  cfg.epsilon = 0.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ParamConfig{};
  cfg.K = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(CutType, BalanceAndSides) {
  EXPECT_TRUE(first_half(10).balanced(0.001));
  EXPECT_FALSE(Cut::from_a(10, std::vector<Vertex>{0, 1, 2, 3}).balanced(0.001));
  EXPECT_TRUE(Cut::from_a(10, std::vector<Vertex>{0, 1, 2, 3}).balanced(0.2));
  EXPECT_FALSE(Cut::from_a(11, std::vector<Vertex>{0, 1, 2, 3, 4}).balanced(0.001));
  const Cut c = Cut::from_a(4, std::vector<Vertex>{1, 3});
  EXPECT_EQ(c.a(), (std::vector<Vertex>{1, 3}));
  EXPECT_EQ(c.swapped().a(), (std::vector<Vertex>{0, 2}));
  EXPECT_THROW(Cut(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
}

TEST(CutProfile, CompleteGraphOnFourVertices) {
  const Graph k4 = Graph::complete(4);
  const auto prof = cut_profile(k4, first_half(4), ParamConfig{}, 1.0);
  EXPECT_TRUE(prof.X.empty());
  EXPECT_TRUE(prof.T.empty());
  EXPECT_TRUE(prof.Q().empty());
  EXPECT_EQ(prof.d_B[0], 2u);
  EXPECT_EQ(prof.codegree_b(0, 1), 2u);
  EXPECT_NEAR(prof.x_threshold, 0.96, 1e-12);
  EXPECT_NEAR(prof.t_threshold, 1.96, 1e-12);
  EXPECT_NEAR(prof.q_threshold[0], 1.6, 1e-12);
}

TEST(CutProfile, ZeroDensityGivesEmptySets) {
  const Graph g = testing::complete_bipartite(4, 5);
  const auto prof = cut_profile(g, Cut::from_a(9, std::vector<Vertex>{0, 1, 2, 3}), ParamConfig{}, 0.0);
  EXPECT_TRUE(prof.X.empty());
  EXPECT_TRUE(prof.T.empty());
  EXPECT_TRUE(prof.Q().empty());
}

TEST(CutProfile, SampledGraphMatchesRecount) {
  const Graph g = sample_gnp({60, 0.5, 13});
  Stream s(40);
  const Cut pi = testing::random_half_cut(s, 60);
  const auto prof = cut_profile(g, pi, ParamConfig{}, 0.5);
  const auto naive = testing::naive_profile(g, pi, Fraction(1, 50), Fraction(4, 5), Fraction(1, 2));
  EXPECT_EQ(prof.X, naive.X);
  EXPECT_EQ(prof.T, naive.T);
  EXPECT_EQ(prof.Q_v, naive.Q_v);
  EXPECT_EQ(prof.Q_e, naive.Q_e);
}

TEST(CutProfileProperty, AgreesWithExactRecount) {
  Stream s(41);
  for (int i = 0; i < 220; ++i) {
    const std::size_t n = s.between(2, 40);
    const long long pct = static_cast<long long>(s.between(1, 100));
    const double p = static_cast<double>(pct) / 100.0;
    const Graph g = sample_gnp({n, p, s.next()});
    const Cut pi = s.coin() ? testing::random_half_cut(s, n) : testing::random_cut(s, n);
    // A density that is not the sampling one exercises every threshold regime.
    const long long scale = static_cast<long long>(s.between(1, 300));
    const double q = static_cast<double>(scale) / 100.0;
    const auto prof = cut_profile(g, pi, ParamConfig{}, q);
    const auto naive = testing::naive_profile(g, pi, Fraction(1, 50), Fraction(4, 5), Fraction(scale, 100));
    ASSERT_EQ(prof.X, naive.X) << "instance " << i;
    ASSERT_EQ(prof.T, naive.T) << "instance " << i;
    ASSERT_EQ(prof.Q_v, naive.Q_v) << "instance " << i;
    ASSERT_EQ(prof.Q_e, naive.Q_e) << "instance " << i;
  }
}

TEST(CutProfileProperty, StructuralInvariants) {
  Stream s(42);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = s.between(4, 50);
    const double p = s.pick(std::vector<double>{0.2, 0.5, 0.8});
    const Graph g = sample_gnp({n, p, s.next()});
    const Cut pi = testing::random_cut(s, n);
    const auto prof = cut_profile(g, pi, ParamConfig{}, p * (0.5 + s.unit()));
    EXPECT_TRUE(std::includes(prof.T.begin(), prof.T.end(), prof.X.begin(), prof.X.end()));
    std::vector<Vertex> diff;
    std::set_difference(prof.T.begin(), prof.T.end(), prof.X.begin(), prof.X.end(),
                        std::back_inserter(diff));
    EXPECT_EQ(prof.T_minus_X, diff);
    auto in_x = [&](Vertex v) { return std::binary_search(prof.X.begin(), prof.X.end(), v); };
    for (const auto& [x, y] : prof.Q_v) EXPECT_TRUE(in_x(x) || in_x(y));
    for (const auto& [x, y] : prof.Q_e) EXPECT_FALSE(in_x(x) || in_x(y));
    std::vector<VertexPair> both;
    std::set_intersection(prof.Q_v.begin(), prof.Q_v.end(), prof.Q_e.begin(), prof.Q_e.end(),
                          std::back_inserter(both));
    EXPECT_TRUE(both.empty());
    EXPECT_EQ(prof.Q().size(), prof.q_size());
    for (const auto& [x, y] : prof.Q()) {
      EXPECT_TRUE(pi.in_a(x) && pi.in_a(y));
      EXPECT_TRUE(prof.in_q(x, y));
    }
  }
}

TEST(CutProfileProperty, InvariantUnderRelabelingB) {
  Stream s(43);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = s.between(6, 40);
    const double p = s.pick(std::vector<double>{0.3, 0.6});
    const Graph g = sample_gnp({n, p, s.next()});
    const Cut pi = testing::random_half_cut(s, n);
    std::vector<Vertex> b = pi.b();
    std::vector<Vertex> shuffled = b;
    for (std::size_t k = shuffled.size(); k > 1; --k) std::swap(shuffled[k - 1], shuffled[s.between(0, k - 1)]);
    std::vector<Vertex> relabel(n);
    std::iota(relabel.begin(), relabel.end(), Vertex{0});
    for (std::size_t k = 0; k < b.size(); ++k) relabel[b[k]] = shuffled[k];
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
      const Vertex u = relabel[e.u], v = relabel[e.v];
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
    const Graph h(n, edges);
    const auto a = cut_profile(g, pi, ParamConfig{}, p);
    const auto c = cut_profile(h, pi, ParamConfig{}, p);
    EXPECT_EQ(a.X, c.X);
    EXPECT_EQ(a.T, c.T);
    EXPECT_EQ(a.Q_v, c.Q_v);
    EXPECT_EQ(a.Q_e, c.Q_e);
  }
}

TEST(Phi, Examples) {
  const Graph g = Graph::complete(6);
  const Cut pi = first_half(6);
  EdgeSet across(g.num_edges());
  for (const Edge& e : g.edges())
    if (pi.in_a(e.u) != pi.in_a(e.v)) across.insert(g.edge_id(e.u, e.v));
  EXPECT_EQ(phi(g, across, pi), cut_size(g, pi));
  EXPECT_EQ(phi(g, EdgeSet(g.num_edges()), pi), 0u);
  EXPECT_EQ(phi(g, edges_by_pairs(g, {{0, 1}, {0, 3}, {1, 4}}), pi), 4u);
}

TEST(PhiProperty, AlgebraicIdentity) {
  Stream s(44);
  for (int i = 0; i < 200; ++i) {
    const Graph g = testing::random_graph(s, 2, 30, {0.3, 0.7});
    const Cut pi = testing::random_cut(s, g.num_vertices());
    EdgeSet f = testing::random_edge_subset(s, g);
    std::size_t in_a = 0, in_b = 0;
    for (EdgeId e : f.ids()) {
      const Edge ed = g.edge(e);
      in_a += pi.in_a(ed.u) && pi.in_a(ed.v);
      in_b += pi.in_b(ed.u) && pi.in_b(ed.v);
    }
    EXPECT_EQ(phi(g, f, pi) + in_b, f.size() + in_a);
  }
}

TEST(Dominance, EmptySetOnCompleteGraph) {
  const Graph k6 = Graph::complete(6);
  const auto r = check_cut_dominance(k6, first_half(6), EdgeSet(k6.num_edges()), ParamConfig{}, 1.0);
  EXPECT_TRUE(r.balanced);
  EXPECT_TRUE(r.triangle_free);
  EXPECT_TRUE(r.differs_from_cut);
  EXPECT_TRUE(r.avoids_q);
  EXPECT_TRUE(r.empty_in_b);
  EXPECT_TRUE(r.crossing_majority);
  // The strict sparsity inequality reads 0 < eta * 0 and fails.
  EXPECT_FALSE(r.sparse_inside);
  EXPECT_EQ(r.phi, 0u);
  EXPECT_EQ(r.cut_size, 9u);
  EXPECT_TRUE(r.conclusion);
  EXPECT_FALSE(r.counterexample());
}

TEST(Dominance, CycleInsideAFailsCrossingMajority) {
  const Graph g = Graph::complete(12);
  const EdgeSet f = edges_by_pairs(g, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const auto r = check_cut_dominance(g, first_half(12), f, ParamConfig{}, 1.0);
  EXPECT_TRUE(r.empty_in_b);
  EXPECT_FALSE(r.crossing_majority);
  EXPECT_EQ(r.majority_violators, (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(r.hypotheses_hold());
  EXPECT_EQ(r.f_in_a, 5u);
  EXPECT_EQ(r.phi, 10u);
}

TEST(Dominance, ConclusionMatchesRecomputation) {
  Stream s(45);
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_graph(s, 4, 30, {0.3, 0.6});
    const Cut pi = testing::random_half_cut(s, g.num_vertices());
    const EdgeSet f = testing::random_edge_subset(s, g, 0.3);
    const auto r = check_cut_dominance(g, pi, f, ParamConfig{}, 0.5);
    EXPECT_EQ(r.phi, phi(g, f, pi));
    EXPECT_EQ(r.cut_size, cut_size(g, pi));
    EXPECT_EQ(r.conclusion, r.phi < r.cut_size);
    EXPECT_EQ(r.triangle_free, is_triangle_free(g, f));
    EXPECT_EQ(r.f_in_a + r.f_in_b + r.f_across, f.size());
  }
}

TEST(PairGain, EmptyPairSetIsSkipped) {
  const Graph g = sample_gnp({12, 0.5, 1});
  const auto r = check_pair_gain(g, first_half(12), {}, ParamConfig{}, 0.5);
  EXPECT_EQ(r.status, CheckStatus::kSkipped);
  EXPECT_FALSE(r.realized_delta.has_value());
}

TEST(PairGain, NoAdmissiblePairsGivesEmptyDomain) {
  const Graph k4 = Graph::complete(4);
  const auto r = check_pair_gain(k4, first_half(4), {}, ParamConfig{}, 1.0);
  EXPECT_EQ(r.status, CheckStatus::kEmptyDomain);
  EXPECT_STREQ(to_string(r.status), "empty-domain");
}

TEST(PairGain, RejectsPairsOutsideQ) {
  const Graph k4 = Graph::complete(4);
  EXPECT_THROW(check_pair_gain(k4, first_half(4), {{0, 1}}, ParamConfig{}, 1.0),
               std::invalid_argument);
}

TEST(PairGain, SampledGraph) {
  const Graph g = sample_gnp({40, 0.5, 21});
  // A lopsided cut makes Q(Π) non-empty.
  const Cut pi = Cut::from_a(40, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                                                     14, 15, 16, 17, 18, 19});
  const auto prof = cut_profile(g, pi, ParamConfig{}, 0.5);
  const auto q = q_edges(g, prof);
  const auto r = check_pair_gain(g, pi, q, ParamConfig{}, 0.5);
  const std::size_t b = max_cut(g).optimum;
  if (q.empty()) {
    EXPECT_EQ(r.status, CheckStatus::kEmptyDomain);
  } else {
    EXPECT_EQ(r.status, CheckStatus::kEvaluated);
    EXPECT_EQ(r.b, b);
    EXPECT_EQ(r.q_size, q.size());
    EXPECT_EQ(r.bound, cut_size(g, pi) + 2 * q.size());
    EXPECT_EQ(r.conclusion, r.b > r.bound);
    ASSERT_TRUE(r.realized_delta.has_value());
    EXPECT_NEAR(*r.realized_delta,
                (static_cast<double>(b) - static_cast<double>(r.cut_size)) /
                    (static_cast<double>(q.size()) * 40 * 0.25),
                1e-12);
  }
}

TEST(Promotion, IdentityWhenXEmpty) {
  const Graph k4 = Graph::complete(4);
  const Cut pi = first_half(4);
  const auto [star, rep] = promote_cut(k4, pi, ParamConfig{}, 1.0);
  EXPECT_EQ(star, pi);
  EXPECT_EQ(rep.x_size, 0u);
  EXPECT_EQ(rep.gain, 0);
}

TEST(PromotionProperty, IdentityWhenXEmpty) {
  Stream s(46);
  for (int i = 0; i < 60; ++i) {
    const Graph g = testing::random_graph(s, 2, 30, {0.4, 0.8});
    const Cut pi = testing::random_cut(s, g.num_vertices());
    const auto prof = cut_profile(g, pi, ParamConfig{}, 0.5);
    const auto [star, rep] = promote_cut(g, pi, ParamConfig{}, 0.5);
    EXPECT_EQ(rep.x_size, prof.X.size());
    EXPECT_EQ(rep.after, cut_size(g, star));
    EXPECT_EQ(rep.gain, static_cast<long long>(rep.after) - static_cast<long long>(rep.before));
    if (prof.X.empty()) EXPECT_EQ(star, pi);
    for (Vertex x : prof.X) EXPECT_TRUE(star.in_b(x));
  }
}

TEST(Promotion, StarCentreMovesAcross) {
  // d_B(centre) = 6 falls below (1 - 2 eps) n p / 4 only once p exceeds 1.
  const Graph g = testing::star(6);
  const Cut pi = Cut::from_a(7, std::vector<Vertex>{0});
  const auto [star, rep] = promote_cut(g, pi, ParamConfig{}, 4.0);
  EXPECT_EQ(rep.x_size, 1u);
  EXPECT_TRUE(star.in_b(0));
  EXPECT_EQ(rep.before, 6u);
  EXPECT_EQ(rep.after, 0u);
  EXPECT_EQ(rep.gain, -6);
  EXPECT_DOUBLE_EQ(rep.benchmark, 14.0);
  EXPECT_FALSE(rep.meets_benchmark);
}

TEST(Promotion, LopsidedCutOnSampledGraph) {
  const Graph g = sample_gnp({60, 0.5, 8});
  // Grow A greedily from the vertices with most neighbours already in A, so
  // A-vertices see few B-neighbours.
  std::vector<std::uint8_t> in_a(60, 0);
  std::vector<Vertex> a{0};
  in_a[0] = 1;
  while (a.size() < 30) {
    Vertex best = 0;
    std::size_t best_in = 0;
    bool found = false;
    for (Vertex v = 0; v < 60; ++v) {
      if (in_a[v]) continue;
      std::size_t inside = 0;
      for (Vertex u : a) inside += g.has_edge(u, v);
      if (!found || inside > best_in) {
        best = v;
        best_in = inside;
        found = true;
      }
    }
    in_a[best] = 1;
    a.push_back(best);
  }
  std::sort(a.begin(), a.end());
  const Cut pi = Cut::from_a(60, a);
  ASSERT_TRUE(pi.balanced(ParamConfig{}.eta));
  const auto [star, rep] = promote_cut(g, pi, ParamConfig{}, 0.5);
  EXPECT_EQ(rep.before, cut_size(g, pi));
  EXPECT_EQ(rep.after, cut_size(g, star));
  EXPECT_DOUBLE_EQ(rep.benchmark, static_cast<double>(rep.x_size) * 60 * 0.5 / 2);
  EXPECT_EQ(rep.meets_benchmark, static_cast<double>(rep.gain) >= rep.benchmark);
}

TEST(Extraction, PerfectMatchingIsKept) {
  const std::vector<VertexPair> q{{0, 5}, {1, 6}, {2, 7}, {3, 8}};
  const auto r = extract_bounded_bipartite(q, 0.3, 0.5, 10.0);
  EXPECT_EQ(r.cap, 1u);
  EXPECT_EQ(r.R, q);
}

TEST(Extraction, StarLimitedByVertexCapacity) {
  const std::vector<VertexPair> q{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  const auto r = extract_bounded_bipartite(q, 0.4, 0.25, 10.0);
  EXPECT_EQ(r.cap, 2u);
  EXPECT_EQ(r.flow_value, 2u);
  EXPECT_EQ(r.R.size(), 2u);
}

TEST(Extraction, RandomBipartiteMatchesIndependentFlow) {
  Stream s(47);
  const auto q = testing::random_bipartite_pairs(s, 20, 20, 80);
  const auto r = extract_bounded_bipartite(q, 0.3, 0.1, 10.0);
  EXPECT_EQ(r.cap, 3u);
  EXPECT_EQ(static_cast<long long>(r.flow_value), testing::naive_bounded_subgraph_size(q, 3));
  EXPECT_LE(r.max_degree, 3u);
}

TEST(ExtractionProperty, DegreeCapAndFlowValue) {
  Stream s(48);
  for (int i = 0; i < 100; ++i) {
    const std::size_t left = s.between(1, 12), right = s.between(1, 12);
    const auto q = testing::random_bipartite_pairs(s, left, right, s.between(1, left * right));
    const double p = 0.05 * static_cast<double>(s.between(1, 10));
    const double tau = 0.05 * static_cast<double>(s.between(1, 10));
    const auto r = extract_bounded_bipartite(q, tau, p, 10.0);
    std::vector<std::size_t> deg(left + right, 0);
    for (const auto& [x, y] : r.R) {
      EXPECT_TRUE(std::binary_search(q.begin(), q.end(), VertexPair{x, y}));
      ++deg[x];
      ++deg[y];
    }
    EXPECT_LE(*std::max_element(deg.begin(), deg.end()), r.cap);
    EXPECT_EQ(static_cast<long long>(r.R.size()), testing::naive_bounded_subgraph_size(q, r.cap));
  }
}

TEST(Extraction, RejectsBadParameters) {
  const std::vector<VertexPair> q{{0, 1}};
  EXPECT_THROW(extract_bounded_bipartite(q, 0.0, 0.5, 10.0), std::invalid_argument);
  EXPECT_THROW(extract_bounded_bipartite(q, 0.5, 0.0, 10.0), std::invalid_argument);
  EXPECT_THROW(extract_bounded_bipartite({{0, 1}, {1, 2}}, 0.5, 0.5, 10.0), std::invalid_argument);
}

TEST(BipartiteHalf, KeepsHalfAndIsBipartite) {
  Stream s(49);
  for (int i = 0; i < 60; ++i) {
    const Graph g = testing::random_graph(s, 3, 25, {0.3, 0.7});
    std::vector<VertexPair> q;
    for (const Edge& e : g.edges()) q.emplace_back(e.u, e.v);
    const auto half = bipartite_half(q);
    EXPECT_GE(2 * half.size(), q.size());
    std::vector<int> side(g.num_vertices(), -1);
    for (const auto& [x, y] : half) {
      EXPECT_NE(side[x], 1);
      EXPECT_NE(side[y], 0);
      side[x] = 0;
      side[y] = 1;
    }
  }
}

TEST(MainChain, CompleteGraphOnFourVertices) {
  const auto r = verify_main_chain(Graph::complete(4), ParamConfig{}, 1.0);
  EXPECT_EQ(r.t, 4u);
  EXPECT_EQ(r.b, 4u);
  EXPECT_EQ(r.cut_method, "exhaustive");
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.first_broken(), 0);
}

TEST(MainChain, FiveCycleBreaksAtTheLastLink) {
  const auto r = verify_main_chain(Graph::cycle(5), ParamConfig{}, 1.0);
  EXPECT_EQ(r.t, 5u);
  EXPECT_EQ(r.b, 4u);
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.first_broken(), 4);
}

TEST(MainChain, SampledGraph) {
  const Graph g = sample_gnp({20, 0.6, 4});
  const auto r = verify_main_chain(g, ParamConfig{}, 0.6);
  EXPECT_EQ(r.t, max_triangle_free(g).optimum);
  EXPECT_EQ(r.b, max_cut(g).optimum);
  EXPECT_EQ(r.phi_f1, r.phi_f + 2 * r.f1_in_q);
  EXPECT_GE(r.f0_in_a, r.f0_in_b);
  EXPECT_TRUE(r.holds());
}

TEST(MainChainProperty, LinksAreConsistent) {
  Stream s(50);
  for (int i = 0; i < 40; ++i) {
    const Graph g = testing::random_graph(s, 3, 12, {0.4, 0.7});
    const auto r = verify_main_chain(g, ParamConfig{}, 0.5);
    EXPECT_EQ(r.links[0], r.t <= r.phi_f1);
    EXPECT_EQ(r.links[2], r.phi_f <= r.cut_size);
    EXPECT_EQ(r.links[3], r.cut_size + 2 * r.f1_in_q <= r.b);
    EXPECT_EQ(r.f1_size, r.t - r.f0_in_b);
    // The chain sandwiches t between the same quantities, so it can hold only when t = b.
    if (r.holds()) EXPECT_EQ(r.t, r.b);
  }
}

TEST(MainChain, LargeSampleIsOutsideTheEnvelope) {
  SolveLimits limits;
  limits.node_budget = 2'000'000;
  EXPECT_THROW(verify_main_chain(sample_gnp({50, 0.45, 2}), ParamConfig{}, 0.45, limits),
               InstanceTooLarge);
}

TEST(Concentration, CompleteGraphHoldsExactly) {
  ConcentrationOptions opt;
  opt.cuts = 20;
  opt.set_pairs = 20;
  opt.floor_constant = 0.5;
  const auto r = concentration_diagnostics(Graph::complete(30), ParamConfig{}, 1.0, opt);
  EXPECT_GT(r.density_cut.evaluated, 0u);
  EXPECT_EQ(r.density_cut.violations, 0u);
  EXPECT_EQ(r.density_inside.violations, 0u);
}

TEST(Concentration, SampledGraphTable) {
  const Graph g = sample_gnp({200, 0.3, 7});
  ConcentrationOptions opt;
  opt.floor_constant = 1.0;
  const auto a = concentration_diagnostics(g, ParamConfig{}, 0.3, opt);
  const auto b = concentration_diagnostics(g, ParamConfig{}, 0.3, opt);
  EXPECT_TRUE(a.balanced_cuts_exist);
  EXPECT_EQ(a.density_cut.evaluated + a.density_cut.skipped, opt.set_pairs);
  EXPECT_EQ(a.density_cut.violations, b.density_cut.violations);
  EXPECT_EQ(a.low_set.evaluated, b.low_set.evaluated);
  EXPECT_GE(a.density_cut.violation_rate(), 0.0);
  EXPECT_LE(a.density_cut.violation_rate(), 1.0);
}

TEST(Concentration, SetsBelowTheFloorAreSkipped) {
  // With the default K the size floor exceeds n, so every sampled set is skipped.
  const auto r = concentration_diagnostics(sample_gnp({40, 0.5, 3}), ParamConfig{}, 0.5);
  EXPECT_GT(r.size_floor, 40.0);
  EXPECT_EQ(r.density_cut.evaluated, 0u);
  EXPECT_GT(r.density_cut.skipped, 0u);
  EXPECT_DOUBLE_EQ(r.density_cut.violation_rate(), 0.0);
}

}  // namespace
}  // namespace mantel
