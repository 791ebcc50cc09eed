#ifndef MANTEL_CUT_STRUCTURE_HPP
#define MANTEL_CUT_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mantel/graph.hpp"
#include "mantel/solvers.hpp"

namespace mantel {

/// Constants of the cut machinery. Reals are read as the shortest decimal
/// that round-trips, so 0.02 means exactly 1/50 in every threshold test.
struct ParamConfig {
  double epsilon = 0.02;
  double eta = 0.001;
  double alpha = 0.8;
  double zeta = 0.005;
  double K = 10000.0;  // 4 / epsilon^2
  double C = 1.0;

  /// Defaults with K = 4/epsilon^2 for the given epsilon.
  static ParamConfig with_epsilon(double epsilon);

  double gamma_c() const { return (1 - 2 * epsilon) / 4; }
  double alpha_prime() const { return alpha / (1 - 2 * epsilon); }
  double vartheta() const { return 0.9 - 2 * zeta / gamma_c() - alpha_prime(); }
  double tau(double p) const { return zeta > p ? zeta : p; }

  /// Throws std::invalid_argument unless 0 < eta <= epsilon/10,
  /// epsilon < 1/2, 0 < alpha < 1, zeta, K, C > 0 and vartheta > 0
  /// (all tested exactly).
  void validate() const;
};

/// Ordered bipartition (A, B) of 0..n-1.
class Cut {
 public:
  Cut() = default;
  /// in_b[v] = 1 puts v in B, 0 in A; other values are rejected.
  explicit Cut(std::vector<std::uint8_t> in_b);
  static Cut from_a(std::size_t n, std::span<const Vertex> a);
  static Cut from_partition(const Partition& part);

  std::size_t num_vertices() const { return side_.size(); }
  bool in_a(Vertex v) const { return side_[v] == 0; }
  bool in_b(Vertex v) const { return side_[v] == 1; }
  std::size_t size_a() const;
  std::size_t size_b() const { return num_vertices() - size_a(); }
  std::vector<Vertex> a() const;
  std::vector<Vertex> b() const;
  const std::vector<std::uint8_t>& sides() const { return side_; }
  Partition partition() const { return {2, side_}; }
  /// (B, A).
  Cut swapped() const;

  /// |A| = (1 ± eta) n / 2, tested exactly.
  bool balanced(double eta) const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<std::uint8_t> side_;
};

/// |∇(A, B)|.
std::size_t cut_size(const Graph& g, const Cut& pi);

/// Unordered vertex pair, first < second.
using VertexPair = std::pair<Vertex, Vertex>;

struct CutProfile {
  std::size_t n = 0;
  double p = 0.0;
  std::vector<Vertex> X;
  std::vector<Vertex> T;
  std::vector<Vertex> T_minus_X;
  std::vector<VertexPair> Q_v;  // sorted
  std::vector<VertexPair> Q_e;  // sorted
  /// d_B(v) for every vertex.
  std::vector<std::uint32_t> d_B;
  /// A in increasing order, and d_B(x, y) for x, y in A.
  std::vector<Vertex> A;
  /// Membership is "value < cutoff", the exact integer form of each
  /// real threshold: X, T, then conditions (i), (ii), (iii).
  std::size_t x_cutoff = 0;
  std::size_t t_cutoff = 0;
  std::size_t q_cutoff[3] = {0, 0, 0};
  /// The real thresholds, for display.
  double x_threshold = 0.0;
  double t_threshold = 0.0;
  double q_threshold[3] = {0.0, 0.0, 0.0};

  std::uint32_t codegree_b(Vertex x, Vertex y) const;
  bool in_q(Vertex x, Vertex y) const;
  std::vector<VertexPair> Q() const;
  std::size_t q_size() const { return Q_v.size() + Q_e.size(); }

 private:
  friend CutProfile cut_profile(const Graph&, const Cut&, const ParamConfig&, double);
  std::vector<std::int32_t> index_in_a_;
  std::vector<std::uint32_t> pair_codegree_;  // triangular over A
  std::vector<std::uint8_t> pair_in_q_;
  std::size_t pair_slot(Vertex x, Vertex y) const;
};

/// X(Π), T(Π) and Q(Π) = Q_v ∪ Q_e for density p >= 0. Any nonnegative p is
/// accepted; it only scales the thresholds.
CutProfile cut_profile(const Graph& g, const Cut& pi, const ParamConfig& cfg, double p);

/// Pairs of Q(Π) that are edges of g.
std::vector<VertexPair> q_edges(const Graph& g, const CutProfile& profile);

/// 2|F[A]| + |F[A,B]|.
std::size_t phi(const Graph& g, const EdgeSet& f, const Cut& pi);

struct CutDominanceReport {
  bool balanced = false;
  bool triangle_free = false;
  bool differs_from_cut = false;
  bool avoids_q = false;
  bool empty_in_b = false;
  bool sparse_inside = false;    // |F[A]| < eta |F[A,B]|
  bool crossing_majority = false;  // |N_F(x) ∩ B| >= |N_F(x) ∩ A| on A
  std::vector<Vertex> majority_violators;
  std::size_t f_in_a = 0;
  std::size_t f_in_b = 0;
  std::size_t f_across = 0;
  std::size_t f_in_q = 0;
  std::size_t phi = 0;
  std::size_t cut_size = 0;
  bool conclusion = false;  // phi < |Π|

  bool hypotheses_hold() const {
    return balanced && triangle_free && differs_from_cut && avoids_q && empty_in_b &&
           sparse_inside && crossing_majority;
  }
  /// All hypotheses hold but the conclusion fails.
  bool counterexample() const { return hypotheses_hold() && !conclusion; }
};

CutDominanceReport check_cut_dominance(const Graph& g, const Cut& pi, const EdgeSet& f,
                                       const ParamConfig& cfg, double p);

enum class CheckStatus { kEvaluated, kSkipped, kEmptyDomain };
const char* to_string(CheckStatus s);

struct PairGainReport {
  CheckStatus status = CheckStatus::kSkipped;
  bool degree_condition = false;  // d_Q(x) <= d_B(x) on A
  std::vector<Vertex> degree_violators;
  std::size_t q_size = 0;
  std::size_t q_in_qv = 0;
  std::size_t q_in_qe = 0;
  std::size_t cut_size = 0;
  std::size_t b = 0;
  std::size_t bound = 0;  // |Π| + 2|q|
  bool conclusion = false;  // b > bound
  /// (b - |Π|) / (|q| n p^2); absent when q is empty or p = 0.
  std::optional<double> realized_delta;
};

/// q must consist of edges of g that lie in Q(Π); otherwise
/// std::invalid_argument. b(G) comes from max_cut and inherits its limits.
PairGainReport check_pair_gain(const Graph& g, const Cut& pi,
                               const std::vector<VertexPair>& q,
                               const ParamConfig& cfg, double p,
                               const SolveLimits& limits = {});

struct PromotionReport {
  std::size_t x_size = 0;
  std::size_t before = 0;  // |Π|
  std::size_t after = 0;   // |Π*|
  long long gain = 0;      // |Π*| - |Π|
  /// sum over x in X of d(x) - 2 d_B(x) - |X|.
  long long degree_sum = 0;
  double benchmark = 0.0;  // |X| n p / 2
  bool meets_degree_sum = false;
  bool meets_benchmark = false;
};

/// Π* = (A \ X(Π), B ∪ X(Π)) with the promotion inequality evaluated.
std::pair<Cut, PromotionReport> promote_cut(const Graph& g, const Cut& pi,
                                            const ParamConfig& cfg, double p);

/// A sub-collection q' of q with |q'| >= |q|/2 that is bipartite, oriented
/// so that .first lies in X and .second in Y. Deterministic local search.
std::vector<VertexPair> bipartite_half(const std::vector<VertexPair>& q);

struct ExtractionReport {
  std::vector<VertexPair> R;
  std::size_t cap = 0;          // ceil(tau / p)
  std::size_t flow_value = 0;   // |R|
  std::size_t max_degree = 0;
  double guarantee = 0.0;       // tau / (2K) times the original |Q|
  bool meets_guarantee = false;
};

/// Largest R ⊆ q with every degree at most ceil(tau/p), by an integral
/// maximum flow. Pairs are oriented (x in X, y in Y) and no vertex may occur
/// on both sides. original_size defaults to q.size(). Throws
/// std::invalid_argument for tau <= 0, p <= 0 or a non-bipartite q.
ExtractionReport extract_bounded_bipartite(const std::vector<VertexPair>& q,
                                           double tau, double p, double K,
                                           std::optional<std::size_t> original_size = {});

struct MainChainReport {
  std::string cut_method;  // "exhaustive" or "hill-climb"
  Cut pi;
  bool balanced = false;
  std::size_t t = 0;
  std::size_t b = 0;
  std::size_t cut_size = 0;
  std::size_t f0_in_a = 0;
  std::size_t f0_in_b = 0;
  std::size_t f0_across = 0;
  std::size_t f1_size = 0;
  std::size_t f_size = 0;
  std::size_t f1_in_q = 0;
  std::size_t phi_f1 = 0;
  std::size_t phi_f = 0;
  /// t <= phi(F1), phi(F1) = phi(F) + 2|F1 ∩ Q|, phi(F) <= |Π|,
  /// |Π| + 2|F1 ∩ Q| <= b.
  bool links[4] = {false, false, false, false};
  CutDominanceReport dominance;

  bool holds() const { return links[0] && links[1] && links[2] && links[3]; }
  /// 1-based index of the first failing link, 0 when the chain holds.
  int first_broken() const;
};

/// Runs the endgame chain on g: F0 a maximum triangle-free subgraph, Π a
/// cut maximizing |F0[A,B]| with |F0[A]| >= |F0[B]| (exhaustive up to 20
/// vertices, single-vertex hill climbing beyond), F1 = F0 \ F0[B],
/// F = F1 \ Q(Π). Throws InstanceTooLarge outside the solver envelopes.
MainChainReport verify_main_chain(const Graph& g, const ParamConfig& cfg, double p,
                                  const SolveLimits& limits = {});

struct ConcentrationTally {
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  double violation_rate() const {
    return evaluated == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(evaluated);
  }
};

struct ConcentrationOptions {
  std::size_t cuts = 100;
  std::size_t set_pairs = 100;
  std::uint64_t seed = 1;
  /// Size floor is floor_constant / p * log n; K of the config if unset.
  std::optional<double> floor_constant;
};

struct ConcentrationReport {
  double size_floor = 0.0;
  DegreeCodegreeStats degrees;         // windows (1 ± eps) np and np^2
  ConcentrationTally density_cut;        // |∇(S,T)| = (1 ± eps)|S||T|p
  ConcentrationTally density_inside;     // |G[S]| = (1 ± eps) C(|S|,2) p
  ConcentrationTally sparse_cut;         // |∇(S,T)| <= 2|T| kappa p
  ConcentrationTally sparse_inside;      // |G[S]| <= |S| kappa p
  ConcentrationTally low_set;            // |T(Π)| < K/p on balanced cuts
  ConcentrationTally low_pair_degree;    // d_{Q_e}(x) < K/p on A \ X
  bool balanced_cuts_exist = false;
};

/// Evaluates the high-probability facts about G(n,p) on sampled sets and
/// cuts. Purely descriptive.
ConcentrationReport concentration_diagnostics(const Graph& g, const ParamConfig& cfg, double p,
                                              const ConcentrationOptions& options = {});

}  // namespace mantel

#endif  // MANTEL_CUT_STRUCTURE_HPP
