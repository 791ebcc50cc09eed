// Lower bounds for 0/1 covering problems
//   min sum_j x_j  subject to  sum_{j in row i} x_j >= c_i,  lo_j <= x_j <= up_j
// from a bounded dual simplex on a dense tableau. Bounds may be changed
// between solves; the basis stays dual feasible, so re-solves are short.
#ifndef MANTEL_SRC_COVERING_LP_HPP
#define MANTEL_SRC_COVERING_LP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mantel::detail {

class CoveringLp {
 public:
  static constexpr double kInf = 1e30;

  explicit CoveringLp(std::size_t variables);

  /// Adds sum_{j in vars} x_j >= rhs. `vars` must be distinct.
  void add_row(std::span<const std::uint32_t> vars, double rhs);

  /// Removes rows that are strictly slack in the current basis. Their
  /// surplus variables are basic, so the basis stays valid.
  std::size_t drop_slack_rows();

  /// Bounds are 0 or 1; lo <= up.
  void set_bounds(std::uint32_t j, std::uint8_t lo, std::uint8_t up);

  struct Result {
    /// Valid lower bound on the covering optimum (computed from the current
    /// duals with true unit costs, independent of simplex round-off).
    double bound = 0.0;
    /// True when some row cannot be covered even with every x_j at its
    /// upper bound; the problem is then infeasible.
    bool infeasible = false;
    bool optimal = false;
    std::size_t pivots = 0;
  };

  /// Stops early once the bound reaches `cutoff`.
  Result solve(std::size_t max_pivots, double cutoff = kInf);

  /// Primal values of the last solve, clamped to the bounds.
  const std::vector<double>& values() const { return x_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_vars() const { return n_; }

 private:

  bool is_basic(std::size_t v) const { return where_[v] >= 0; }
  double nonbasic_value(std::size_t v) const { return at_upper_[v] ? up_[v] : lo_[v]; }
  void reset();
  void pivot(std::size_t r, std::size_t q);
  void refresh_values();
  bool drifted() const;
  Result evaluate(bool optimal);

  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<double> rhs_;

  // Variables 0..n-1 are structural, n + i is the surplus of row i.
  std::vector<double> cost_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<std::int64_t> where_;     // basic row, or -(column + 1)
  std::vector<std::uint32_t> basic_;    // row -> variable
  std::vector<std::uint32_t> column_;   // tableau column -> variable
  std::vector<double> tableau_;         // rows x n, x_B + T x_N = const
  std::vector<double> beta_;            // basic values
  std::vector<double> reduced_;         // per tableau column
  std::vector<double> x_;
  std::size_t pivots_since_check_ = 0;
};

}  // namespace mantel::detail

#endif  // MANTEL_SRC_COVERING_LP_HPP
