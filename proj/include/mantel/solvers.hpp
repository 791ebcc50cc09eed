#ifndef MANTEL_SOLVERS_HPP
#define MANTEL_SOLVERS_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mantel/graph.hpp"

namespace mantel {

/// Raised when an exact solve would exceed its vertex envelope or node budget.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered partition of the vertex set into classes 0..k-1. A cut (A, B) is
/// the two-class case with A = class 0.
struct Partition {
  std::size_t classes = 2;
  std::vector<std::uint8_t> label;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Edges of g joining different classes of part.
EdgeSet crossing_edges(const Graph& g, const Partition& part);
std::size_t crossing_count(const Graph& g, const Partition& part);

struct SolveLimits {
  /// Largest n accepted by max_cut.
  std::size_t max_cut_vertices = 40;
  /// max_cut switches from Gray-code enumeration to branch-and-bound above this.
  std::size_t gray_code_vertices = 28;
  /// Search nodes per solve (summed over independent components).
  std::uint64_t node_budget = 100'000'000;
  /// Enumerated optima per all-optima decision.
  std::uint64_t optima_cap = 1'000'000;
  /// Largest n accepted by the transversal and multipartite searches.
  std::size_t search_vertices = 512;
  /// Largest n accepted by max_multipartite with more than two classes.
  std::size_t multipartite_vertices = 24;
};

enum class Verdict {
  kNotRequested,
  kAllBipartite,
  kNonBipartiteOptimumFound,
  kInconclusive,
};

const char* to_string(Verdict v);

/// Result of an exact solve. `witness` always holds the optimal edge set; for
/// cut and partition problems `partition` holds the vertex classes as well.
struct SolveCertificate {
  std::size_t optimum = 0;
  EdgeSet witness;
  std::optional<Partition> partition;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
  std::string method;

  Verdict verdict = Verdict::kNotRequested;
  /// Non-bipartite optimum when verdict is kNonBipartiteOptimumFound.
  std::optional<EdgeSet> counterexample;
  std::uint64_t optima_enumerated = 0;
  /// Optimum of max_cut on the same graph, when the decision computed it.
  std::optional<std::size_t> bipartite_optimum;
};

/// b(G): maximum cut. Gray-code enumeration up to limits.gray_code_vertices,
/// branch-and-bound with suffix ("Russian doll") bounds above that. Throws
/// InstanceTooLarge beyond limits.max_cut_vertices.
SolveCertificate max_cut(const Graph& g, const SolveLimits& limits = {});

/// t(G): maximum triangle-free subgraph, via minimum triangle transversal.
/// `hint` is any cut of g; its crossing edges seed the incumbent.
SolveCertificate max_triangle_free(const Graph& g,
                                   const SolveLimits& limits = {},
                                   const std::optional<Partition>& hint = {});


/// t_r(G): maximum K_r-free subgraph, r >= 3.
SolveCertificate max_kr_free(const Graph& g, std::size_t r,
                             const SolveLimits& limits = {},
                             const std::optional<Partition>& hint = {});

/// b_r(G): maximum (parts)-partite subgraph, parts >= 2.
SolveCertificate max_multipartite(const Graph& g, std::size_t parts,
                                  const SolveLimits& limits = {});

/// Weak event t(G) = b(G), decided without enumerating optima. When the
/// event fails the search stops at the first triangle-free subgraph larger
/// than b, so `witness` is a certificate but not necessarily a maximum one.
struct EqualityDecision {
  bool equal = false;
  std::size_t b = 0;
  EdgeSet witness;  // triangle-free; |witness| = b iff equal
  Partition cut;    // the maximum cut behind b
  std::uint64_t nodes_explored = 0;
};
EqualityDecision decide_t_equals_b(const Graph& g, const SolveLimits& limits = {});

/// Decides whether every maximum triangle-free subgraph of g is bipartite.
/// The verdict is kInconclusive when limits.optima_cap or the node budget
/// runs out during enumeration.
SolveCertificate all_max_triangle_free_bipartite(const Graph& g,
                                                 const SolveLimits& limits = {});
/// Same, reusing a weak decision already made for g.
SolveCertificate all_max_triangle_free_bipartite(const Graph& g,
                                                 const EqualityDecision& weak,
                                                 const SolveLimits& limits = {});

/// Edges of a K_r-free subgraph have at most turan_edges(s, r - 1) edges
/// inside any s-clique.
std::size_t turan_edges(std::size_t s, std::size_t classes);

/// Most edges of a triangle-free, non-bipartite graph on n vertices:
/// floor((n-1)^2/4) + 1, or 0 when n < 5 and no such graph exists. When
/// b(G) exceeds it for the non-isolated vertices of G, t(G) = b(G) and every
/// maximum triangle-free subgraph is bipartite; both decisions use this.
std::size_t non_bipartite_triangle_free_max(std::size_t n);

/// Local-search partition with `parts` classes; deterministic, no guarantee.
Partition local_search_partition(const Graph& g, std::size_t parts);

// Exhaustive oracles, used by tests and for cross-checking.

/// Max triangle-free edge count by exhaustive search; requires m <= 24.
std::size_t brute_force_t(const Graph& g);
/// Max cut by enumerating all 2^(n-1) bipartitions; requires n <= 20.
std::size_t brute_force_b(const Graph& g);
/// Max K_r-free edge count over all edge subsets; requires m <= 24.
std::size_t brute_force_kr_free(const Graph& g, std::size_t r);
/// Max (parts)-partite edge count over all labelings; requires parts^n <= 2^24.
std::size_t brute_force_multipartite(const Graph& g, std::size_t parts);

struct StabilityReport {
  std::size_t f_size = 0;
  std::size_t f_max_cut = 0;
  /// |f| - b(f): edges that must be deleted to make f bipartite.
  std::size_t bipartite_distance = 0;
  double theta = 0.0;
  double p = 0.0;
  double allowance = 0.0;  // theta * n^2 * p
  bool within_allowance = false;
};

/// Bipartite distance of a triangle-free f with |f| >= |g|/2, compared with
/// theta * n^2 * p. Throws std::invalid_argument if f violates the
/// preconditions.
StabilityReport stability_check(const Graph& g, const EdgeSet& f,
                                double theta, double p,
                                const SolveLimits& limits = {});

}  // namespace mantel

#endif  // MANTEL_SOLVERS_HPP
