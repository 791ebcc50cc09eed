#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mantel/experiments.hpp"
#include "mantel/random.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace mantel {
namespace {

using testing::Stream;

bool is_cycle_in(const Graph& g, const Obstruction& ob) {
  const auto& c = ob.cycle;
  if (c.size() < 3 || c.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vertex u = c[i], v = c[(i + 1) % c.size()];
    if (!g.has_edge(u, v) || !ob.edges.contains(g.edge_id(std::min(u, v), std::max(u, v))))
      return false;
  }
  return ob.edges.size() == c.size();
}

TEST(Obstruction, Examples) {
  const Graph c5 = Graph::cycle(5);
  const auto w = obstruction_witness(c5);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->edges, EdgeSet::all(c5));
  EXPECT_TRUE(is_cycle_in(c5, *w));

  EXPECT_FALSE(obstruction_witness(Graph::complete(5)).has_value());

  const Graph pet = testing::petersen();
  const auto pw = obstruction_witness(pet);
  ASSERT_TRUE(pw.has_value());
  EXPECT_EQ(pw->cycle.size(), 5u);
  EXPECT_TRUE(is_cycle_in(pet, *pw));
  EXPECT_EQ(max_triangle_free(pet).optimum, 15u);
  EXPECT_EQ(max_cut(pet).optimum, 12u);
}

TEST(ObstructionProperty, WitnessImpliesStrictGap) {
  Stream s(80);
  int found = 0;
  for (int i = 0; i < 520; ++i) {
    const Graph g = testing::random_graph(s, 8, 20, {0.15, 0.2, 0.25, 0.3});
    const auto w = obstruction_witness(g);
    if (!w) continue;
    ++found;
    EXPECT_TRUE(is_cycle_in(g, *w));
    const EdgeSet lonely = edges_in_no_triangle(g);
    EXPECT_EQ((w->edges & lonely), w->edges);
    EXPECT_GT(max_triangle_free(g).optimum, max_cut(g).optimum) << "instance " << i;
  }
  EXPECT_GT(found, 50);
}

TEST(EstimateF, CompleteGraphOnFourVertices) {
  const auto r = estimate_f(4, 1.0, 10, 1, EventMode::kWeak);
  EXPECT_EQ(r.weak_success, 10u);
  EXPECT_DOUBLE_EQ(r.weak_rate(), 1.0);
}

TEST(EstimateF, EmptyGraph) {
  const auto r = estimate_f(30, 0.0, 10, 1, EventMode::kStrong);
  EXPECT_EQ(r.weak_success, 10u);
  EXPECT_EQ(r.strong_success, 10u);
  EXPECT_EQ(r.obstructions, 0u);
}

TEST(EstimateF, RegressionCountsAreStable) {
  const auto a = estimate_f(30, 0.15, 200, 17, EventMode::kWeak);
  const auto b = estimate_f(30, 0.15, 200, 17, EventMode::kWeak);
  EXPECT_EQ(a.weak_success, b.weak_success);
  EXPECT_EQ(a.obstructions, b.obstructions);
  // Counts from the first audited run.
  EXPECT_EQ(a.weak_success, 0u);
  EXPECT_EQ(a.obstructions, 186u);
  EXPECT_EQ(a.weak_inconclusive, 0u);
}

TEST(EstimateF, EnvelopeEnforced) {
  EXPECT_THROW(estimate_f(41, 0.5, 1, 1, EventMode::kWeak), InstanceTooLarge);
  EXPECT_THROW(estimate_f(31, 0.5, 1, 1, EventMode::kStrong), InstanceTooLarge);
}

TEST(Trials, MatchDirectSolves) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const double p = 0.1 + 0.03 * static_cast<double>(i);
    const auto r = run_trial(12, p, 99, i, EventMode::kStrong, SolveLimits{});
    const Graph g = sample_gnp({12, p, derive_seed(99, i)});
    EXPECT_EQ(r.seed, derive_seed(99, i));
    const bool equal = max_triangle_free(g).optimum == max_cut(g).optimum;
    EXPECT_EQ(r.weak, equal ? Outcome::kYes : Outcome::kNo);
    EXPECT_EQ(r.obstruction, obstruction_witness(g).has_value());
    const auto all = all_max_triangle_free_bipartite(g);
    EXPECT_EQ(r.strong, all.verdict == Verdict::kAllBipartite ? Outcome::kYes : Outcome::kNo);
  }
}

TEST(TrialsProperty, WeakAtLeastStrong) {
  Stream s(81);
  for (int i = 0; i < 120; ++i) {
    const double p = s.pick(std::vector<double>{0.2, 0.4, 0.6, 0.8});
    const auto r = run_trial(s.between(4, 14), p, s.next(), 0, EventMode::kStrong, SolveLimits{});
    if (r.strong == Outcome::kYes) EXPECT_EQ(r.weak, Outcome::kYes);
    if (r.obstruction) EXPECT_EQ(r.weak, Outcome::kNo);
  }
}

TEST(Sweep, EndpointsGiveFullRate) {
  const auto records = sweep(20, {0.0, 1.0}, 5, 3, EventMode::kStrong);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) {
    EXPECT_DOUBLE_EQ(r.weak_rate(), 1.0);
    EXPECT_DOUBLE_EQ(r.strong_rate(), 1.0);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  const std::vector<double> grid{0.1, 0.3, 0.6};
  ExperimentConfig one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = sweep_csv(sweep(14, grid, 30, 5, EventMode::kStrong, one));
  const auto b = sweep_csv(sweep(14, grid, 30, 5, EventMode::kStrong, four));
  const auto c = sweep_csv(sweep(14, grid, 30, 5, EventMode::kStrong, one));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Sweep, WeakRateNeverBelowStrongRate) {
  const auto records = sweep(12, geometric_grid(0.05, 0.9, 6), 40, 8, EventMode::kStrong);
  for (const auto& r : records) {
    EXPECT_GE(r.weak_success, r.strong_success);
    EXPECT_LE(r.weak_ci.lo, r.weak_ci.hi);
  }
}

TEST(Sweep, CsvFormat) {
  const auto records = sweep(8, {0.25, 0.5}, 4, 2, EventMode::kWeak);
  std::istringstream in(sweep_csv(records));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "n,p,trials,weak_count,weak_lo,weak_hi,strong_count,strong_lo,strong_hi,"
            "inconclusive,obstructions,seed");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("8,0.250000,4,", 0), 0u) << line;
  // Weak mode leaves the strong columns empty.
  EXPECT_NE(line.find(",,,"), std::string::npos) << line;
}

TEST(Grids, GeometricAndAuto) {
  const auto g = geometric_grid(0.02, 0.9, 10);
  ASSERT_EQ(g.size(), 10u);
  EXPECT_DOUBLE_EQ(g.front(), 0.02);
  EXPECT_NEAR(g.back(), 0.9, 1e-15);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
  EXPECT_THROW(geometric_grid(0.0, 1.0, 3), std::invalid_argument);

  const auto a = auto_grid(36);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_DOUBLE_EQ(a.front(), 1.0 / 36);
  EXPECT_DOUBLE_EQ(a.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  const double s = threshold_scale(36);
  EXPECT_NEAR(s, std::sqrt(std::log(36.0) / 36.0), 1e-15);
  auto has = [&](double v) {
    return std::any_of(a.begin(), a.end(), [&](double x) { return std::abs(x - v) < 1e-12; });
  };
  EXPECT_TRUE(has(0.1 * s));
  EXPECT_TRUE(has(s));
}

TEST(Crossing, SmallInstanceFindsACrossing) {
  const auto r = threshold_crossing(4, 20, 1);
  EXPECT_TRUE(r.found);
  EXPECT_LE(r.p_star, 1.0);
  EXPECT_GT(r.p_star, 0.0);
  EXPECT_NEAR(r.ratio, r.p_star / threshold_scale(4), 1e-12);
}

TEST(Crossing, Deterministic) {
  const auto a = threshold_crossing(10, 30, 3, 0.5, 4);
  const auto b = threshold_crossing(10, 30, 3, 0.5, 4);
  EXPECT_EQ(a.found, b.found);
  EXPECT_EQ(a.p_star, b.p_star);
  EXPECT_EQ(a.evaluations.size(), b.evaluations.size());
}

}  // namespace
}  // namespace mantel
