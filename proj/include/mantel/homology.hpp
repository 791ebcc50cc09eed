#ifndef MANTEL_HOMOLOGY_HPP
#define MANTEL_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mantel/graph.hpp"
#include "mantel/stats.hpp"

namespace mantel {

/// Matrix over GF(2) with sparse rows (sorted column indices).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_; }

  /// Replaces row r; `support` lists the columns holding a 1, each once.
  void set_row(std::size_t r, std::vector<std::uint32_t> support);
  const std::vector<std::uint32_t>& row(std::size_t r) const { return rows_[r]; }
  bool get(std::size_t r, std::size_t c) const;

  Gf2Matrix transpose() const;
  /// this * other over GF(2).
  Gf2Matrix multiply(const Gf2Matrix& other) const;
  bool is_zero() const;

  /// Rank by sparse elimination on a copy; each step pivots on a lightest
  /// remaining row.
  std::size_t rank() const;

  /// Basis of {x : M x = 0}, each vector as a sorted support.
  std::vector<std::vector<std::uint32_t>> null_space() const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<std::uint32_t>> rows_;
};

struct HomologyLimits {
  std::size_t max_vertices = 60;
  std::size_t max_faces = 4'000'000;
};

/// Clique complex truncated at dimension k_max: faces of dimension k are the
/// (k+1)-cliques, kept in lexicographic order. Dimensions past the largest
/// clique are dropped, so top_dimension() may be below k_max.
class CliqueComplex {
 public:
  /// Throws InstanceTooLarge past the limits, and std::logic_error if the
  /// boundary maps fail to compose to zero.
  CliqueComplex(const Graph& g, std::size_t k_max = 3, const HomologyLimits& limits = {});

  std::size_t top_dimension() const { return faces_.size() - 1; }
  std::size_t num_faces(std::size_t k) const;
  /// Vertices of face i of dimension k.
  std::span<const Vertex> face(std::size_t k, std::size_t i) const;
  /// Index of a sorted vertex list, or SIZE_MAX if it is not a face.
  std::size_t index_of(std::span<const Vertex> vertices) const;

  /// ∂_k : C_k -> C_{k-1} as a (#(k-1)-faces) x (#k-faces) matrix, k >= 1.
  Gf2Matrix boundary(std::size_t k) const;

  /// ∂_k ∘ ∂_{k+1} = 0 for every k the complex supports.
  bool boundary_squares_to_zero() const;

  /// Unreduced Betti numbers β_0..β_top over GF(2) of the stored complex.
  /// Below the top they agree with the full clique complex; at the top they
  /// agree too when g has no clique one size larger.
  std::vector<std::size_t> betti_numbers() const;

  /// Σ (-1)^k · #k-faces.
  long long euler_characteristic() const;

 private:
  std::size_t n_;
  std::vector<std::vector<Vertex>> faces_;  // flat, stride k + 1
};

/// dim H_k(X(G); GF(2)), reduced for k = 0 (components - 1).
std::size_t betti_z2(const Graph& g, std::size_t k, const HomologyLimits& limits = {});

/// W = {w ⊆ E : |w ∩ T| even for every triangle T}.
struct EvenSpace {
  std::size_t dimension = 0;
  std::vector<EdgeSet> basis;
};
EvenSpace triangle_even_space(const Graph& g);

struct H1CutReport {
  bool every_edge_in_triangle = false;
  bool h1_zero = false;
  bool even_space_is_cut_space = false;
  std::size_t betti1 = 0;
  std::size_t even_dimension = 0;
  std::size_t cut_dimension = 0;  // n - components
};

/// Evaluates both sides of the homology event along two independent routes.
/// Throws std::logic_error if h1_zero and even_space_is_cut_space disagree.
H1CutReport check_h1_cut_event(const Graph& g, const HomologyLimits& limits = {});

/// ((1 + k/2) log n / n)^(1/(k+1)).
double homology_threshold(std::size_t n, std::size_t k);

struct HomologyRow {
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t zero_count = 0;
  double fraction = 0.0;
  Interval ci;
};

struct HomologySweep {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  std::vector<HomologyRow> rows;
};

/// Fraction of sampled G(n,p) with H_k = 0 (reduced for k = 0) at each p.
/// Trial i uses seed derive_seed(seed, i); threads never change results.
HomologySweep homology_sweep(std::size_t n, std::size_t k, const std::vector<double>& p_grid,
                             std::size_t trials, std::uint64_t seed, unsigned threads = 0,
                             const HomologyLimits& limits = {});

/// CSV with header p,trials,h_k_zero_count,fraction,wilson_lo,wilson_hi.
void write_homology_csv(std::ostream& out, const HomologySweep& sweep);

}  // namespace mantel

#endif  // MANTEL_HOMOLOGY_HPP
