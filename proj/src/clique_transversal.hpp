// Branch-and-bound over minimum K_r transversals (edge sets meeting every
// r-clique). Private to the solver library.
#ifndef MANTEL_SRC_CLIQUE_TRANSVERSAL_HPP
#define MANTEL_SRC_CLIQUE_TRANSVERSAL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "covering_lp.hpp"
#include "mantel/graph.hpp"
#include "mantel/solvers.hpp"

namespace mantel::detail {

/// One class of the "shares an r-clique" relation on edges. Every r-clique of
/// the host lies inside exactly one class, so classes are solved separately.
struct TransversalProblem {
  std::size_t order = 3;               // r
  std::vector<EdgeId> edges;           // local edge -> host edge
  std::vector<Vertex> vertices;        // local vertex -> host vertex
  std::vector<std::uint32_t> head;     // local edge -> local endpoint (smaller)
  std::vector<std::uint32_t> tail;     // local edge -> local endpoint (larger)
  std::vector<std::uint32_t> clique_edges;     // stride r(r-1)/2
  std::vector<std::uint32_t> clique_vertices;  // stride r

  std::size_t num_cliques() const { return clique_vertices.size() / order; }
};

/// Splits the r-cliques of g into independent transversal problems.
std::vector<TransversalProblem> decompose(const Graph& g, std::size_t order);

/// Shared work counter (search nodes plus simplex pivots); throws
/// InstanceTooLarge once the budget is spent.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t units = 1) {
    used_ += units;
    if (used_ > limit_) throw InstanceTooLarge("node budget exhausted");
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

class TransversalSearch {
 public:
  TransversalSearch(const TransversalProblem& problem, NodeBudget& budget);
  ~TransversalSearch();

  /// Minimum transversal (local edge ids). `incumbent` must be a transversal;
  /// only strictly smaller ones are searched for.
  std::vector<std::uint32_t> minimize(std::vector<std::uint32_t> incumbent);

  /// Some transversal strictly smaller than `incumbent`, or nothing if
  /// `incumbent` is already minimum. Stops at the first improvement.
  std::optional<std::vector<std::uint32_t>> improve(std::vector<std::uint32_t> incumbent);

  /// Visits every transversal of exactly `size` edges once. The visitor
  /// returns false to stop; enumerate returns false if it was stopped.
  bool enumerate(std::size_t size,
                 const std::function<bool(std::span<const std::uint32_t>)>& visit);

  /// Lower bound on the transversal size at the root.
  std::size_t root_bound();

 private:
  enum class Mode { kMinimize, kEnumerate };
  enum Status : std::uint8_t { kFree = 0, kKept = 1, kDeleted = 2 };

  struct TrailEntry {
    std::uint32_t edge;
    Status action;
  };

  void remove_edge(std::uint32_t e);
  void keep_edge(std::uint32_t e);
  void undo_to(std::size_t mark);
  bool propagate();
  std::size_t packing_bound(std::vector<std::vector<std::uint32_t>>* packed = nullptr);
  std::ptrdiff_t pick_clique() const;
  void search();

  // Linear relaxation (triangle problems only): rows for every triangle,
  // plus clique rows found by separation at the root.
  void build_relaxation();
  std::size_t separate_triangles();
  std::size_t separate_cliques();
  /// Lower bound on the total deletions at this node; SIZE_MAX if infeasible.
  std::size_t relaxation_bound();
  /// Rounds the last relaxation into a transversal; adopts it if smaller.
  void round_relaxation();
  /// A pivot touches the whole tableau, so it is charged by tableau size.
  void charge_pivots(std::size_t pivots) {
    budget_.charge(pivots * (1 + lp_->num_rows() * lp_->num_vars() / 256));
  }

  const TransversalProblem& problem_;
  NodeBudget& budget_;
  std::size_t stride_;
  std::size_t words_;
  std::vector<std::size_t> deficiency_;  // by clique size

  std::vector<std::vector<std::uint32_t>> incident_;  // edge -> cliques
  std::vector<Status> status_;
  std::vector<std::uint32_t> alive_count_;
  std::vector<std::uint32_t> deleted_in_;
  std::vector<std::uint32_t> kept_in_;
  std::vector<std::uint64_t> rows_;     // current graph, local vertices
  std::vector<std::uint64_t> scratch_;  // unused-edge rows during packing
  std::vector<std::uint32_t> removed_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> pending_;  // cliques to re-examine
  bool conflict_ = false;

  Mode mode_ = Mode::kMinimize;
  std::size_t target_ = 0;
  std::vector<std::uint32_t> best_;
  const std::function<bool(std::span<const std::uint32_t>)>* visit_ = nullptr;
  bool stopped_ = false;
  bool first_only_ = false;

  std::unique_ptr<CoveringLp> lp_;
  std::vector<std::int32_t> edge_at_;  // local vertex pair -> local edge
};

}  // namespace mantel::detail

#endif  // MANTEL_SRC_CLIQUE_TRANSVERSAL_HPP
