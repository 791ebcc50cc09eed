#include "mantel/homology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mantel/random.hpp"
#include "mantel/solvers.hpp"
#include "parallel.hpp"

namespace mantel {

namespace {

using Support = std::vector<std::uint32_t>;

// Symmetric difference of two sorted supports.
Support xor_sorted(const Support& a, const Support& b) {
  Support out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

// Dense bit rows for reduced row echelon form.
struct DenseRows {
  std::size_t words;
  std::vector<std::vector<std::uint64_t>> rows;

  bool test(std::size_t r, std::size_t c) const { return (rows[r][c >> 6] >> (c & 63)) & 1u; }
  void xor_into(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words; ++w) rows[dst][w] ^= rows[src][w];
  }
};

}  // namespace

void Gf2Matrix::set_row(std::size_t r, std::vector<std::uint32_t> support) {
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
    throw std::invalid_argument("Gf2Matrix::set_row: repeated column");
  }
  if (!support.empty() && support.back() >= cols_) {
    throw std::out_of_range("Gf2Matrix::set_row: column out of range");
  }
  rows_.at(r) = std::move(support);
}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(c));
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::uint32_t c : rows_[r]) t.rows_[c].push_back(static_cast<std::uint32_t>(r));
  }
  return t;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix& other) const {
  if (cols_ != other.num_rows()) throw std::invalid_argument("Gf2Matrix::multiply: shape mismatch");
  Gf2Matrix out(rows_.size(), other.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Support hits;
    for (std::uint32_t k : rows_[r]) {
      hits.insert(hits.end(), other.rows_[k].begin(), other.rows_[k].end());
    }
    std::sort(hits.begin(), hits.end());
    Support row;
    for (std::size_t i = 0; i < hits.size();) {
      std::size_t j = i;
      while (j < hits.size() && hits[j] == hits[i]) ++j;
      if ((j - i) % 2 == 1) row.push_back(hits[i]);
      i = j;
    }
    out.rows_[r] = std::move(row);
  }
  return out;
}

bool Gf2Matrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Support& r) { return r.empty(); });
}

std::size_t Gf2Matrix::rank() const {
  std::vector<Support> work;
  work.reserve(rows_.size());
  for (const auto& r : rows_) {
    if (!r.empty()) work.push_back(r);
  }
  std::size_t rank = 0;
  while (!work.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < work.size(); ++i) {
      if (work[i].size() < work[best].size()) best = i;
    }
    std::swap(work[best], work.back());
    const Support pivot = std::move(work.back());
    work.pop_back();
    ++rank;
    const std::uint32_t col = pivot.front();
    for (std::size_t i = 0; i < work.size();) {
      if (std::binary_search(work[i].begin(), work[i].end(), col)) {
        work[i] = xor_sorted(work[i], pivot);
        if (work[i].empty()) {
          std::swap(work[i], work.back());
          work.pop_back();
          continue;
        }
      }
      ++i;
    }
  }
  return rank;
}

std::vector<std::vector<std::uint32_t>> Gf2Matrix::null_space() const {
  DenseRows m{(cols_ + 63) / 64, {}};
  m.rows.assign(rows_.size(), std::vector<std::uint64_t>(m.words, 0));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::uint32_t c : rows_[r]) m.rows[r][c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  std::vector<std::size_t> pivot_col;
  std::vector<char> is_pivot(cols_, 0);
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols_ && top < m.rows.size(); ++c) {
    std::size_t found = top;
    while (found < m.rows.size() && !m.test(found, c)) ++found;
    if (found == m.rows.size()) continue;
    std::swap(m.rows[found], m.rows[top]);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      if (r != top && m.test(r, c)) m.xor_into(r, top);
    }
    pivot_col.push_back(c);
    is_pivot[c] = 1;
    ++top;
  }
  // One basis vector per free column f: x_f = 1, pivot x_{p_i} = row_i[f].
  std::vector<Support> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Support v{static_cast<std::uint32_t>(f)};
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      if (m.test(i, f)) v.push_back(static_cast<std::uint32_t>(pivot_col[i]));
    }
    std::sort(v.begin(), v.end());
    basis.push_back(std::move(v));
  }
  return basis;
}

CliqueComplex::CliqueComplex(const Graph& g, std::size_t k_max, const HomologyLimits& limits)
    : n_(g.num_vertices()) {
  if (n_ > limits.max_vertices) {
    throw InstanceTooLarge("clique complex: n = " + std::to_string(n_) +
                           " exceeds the vertex limit " + std::to_string(limits.max_vertices));
  }
  const std::size_t words = g.words_per_row();
  std::size_t total = n_;
  faces_.emplace_back();
  for (Vertex v = 0; v < n_; ++v) faces_[0].push_back(v);
  std::vector<std::uint64_t> common(words);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto& prev = faces_[k - 1];
    std::vector<Vertex> next;
    for (std::size_t i = 0; i < prev.size(); i += k) {
      const Vertex* f = prev.data() + i;
      const auto first = g.row(f[0]);
      std::copy(first.begin(), first.end(), common.begin());
      for (std::size_t j = 1; j < k; ++j) {
        const auto r = g.row(f[j]);
        for (std::size_t w = 0; w < words; ++w) common[w] &= r[w];
      }
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = common[w];
        while (bits) {
          const Vertex v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
          bits &= bits - 1;
          if (v <= f[k - 1]) continue;
          next.insert(next.end(), f, f + k);
          next.push_back(v);
          if (++total > limits.max_faces) {
            throw InstanceTooLarge("clique complex: more than " +
                                   std::to_string(limits.max_faces) + " faces");
          }
        }
      }
    }
    if (next.empty()) break;
    faces_.push_back(std::move(next));
  }
  if (!boundary_squares_to_zero()) {
    throw std::logic_error("clique complex: boundary maps do not compose to zero");
  }
}

std::size_t CliqueComplex::num_faces(std::size_t k) const {
  return k < faces_.size() ? faces_[k].size() / (k + 1) : 0;
}

std::span<const Vertex> CliqueComplex::face(std::size_t k, std::size_t i) const {
  return {faces_.at(k).data() + i * (k + 1), k + 1};
}

std::size_t CliqueComplex::index_of(std::span<const Vertex> vertices) const {
  if (vertices.empty() || vertices.size() > faces_.size()) return SIZE_MAX;
  const std::size_t k = vertices.size() - 1;
  std::size_t lo = 0;
  std::size_t hi = num_faces(k);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto f = face(k, mid);
    if (std::lexicographical_compare(f.begin(), f.end(), vertices.begin(), vertices.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_faces(k) && std::ranges::equal(face(k, lo), vertices)) return lo;
  return SIZE_MAX;
}

Gf2Matrix CliqueComplex::boundary(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("boundary: k must be at least 1");
  const std::size_t cols = num_faces(k);
  Gf2Matrix transposed(cols, num_faces(k - 1));
  std::vector<Vertex> sub(k);
  for (std::size_t j = 0; j < cols; ++j) {
    const auto f = face(k, j);
    Support column;
    for (std::size_t drop = 0; drop <= k; ++drop) {
      std::size_t at = 0;
      for (std::size_t i = 0; i <= k; ++i) {
        if (i != drop) sub[at++] = f[i];
      }
      const std::size_t idx = index_of(sub);
      if (idx == SIZE_MAX) throw std::logic_error("clique complex is not closed under faces");
      column.push_back(static_cast<std::uint32_t>(idx));
    }
    transposed.set_row(j, std::move(column));
  }
  return transposed.transpose();
}

bool CliqueComplex::boundary_squares_to_zero() const {
  for (std::size_t k = 1; k < top_dimension(); ++k) {
    if (!boundary(k).multiply(boundary(k + 1)).is_zero()) return false;
  }
  return true;
}

std::vector<std::size_t> CliqueComplex::betti_numbers() const {
  const std::size_t top = top_dimension();
  // rank[k] = rank of ∂_k; ∂_0 and ∂_{top+1} vanish.
  std::vector<std::size_t> rank(top + 2, 0);
  for (std::size_t k = 1; k <= top; ++k) rank[k] = boundary(k).transpose().rank();
  std::vector<std::size_t> betti(top + 1);
  for (std::size_t k = 0; k <= top; ++k) betti[k] = num_faces(k) - rank[k] - rank[k + 1];
  return betti;
}

long long CliqueComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t k = 0; k <= top_dimension(); ++k) {
    const auto count = static_cast<long long>(num_faces(k));
    chi += k % 2 == 0 ? count : -count;
  }
  return chi;
}

std::size_t betti_z2(const Graph& g, std::size_t k, const HomologyLimits& limits) {
  if (k == 0) {
    const std::size_t c = connected_components(g).count;
    return c == 0 ? 0 : c - 1;
  }
  const CliqueComplex complex(g, k + 1, limits);
  if (k > complex.top_dimension()) return 0;
  return complex.betti_numbers()[k];
}

EvenSpace triangle_even_space(const Graph& g) {
  const auto tris = triangle_edges(g);
  Gf2Matrix incidence(tris.size(), g.num_edges());
  for (std::size_t i = 0; i < tris.size(); ++i) {
    incidence.set_row(i, {tris[i][0], tris[i][1], tris[i][2]});
  }
  EvenSpace w;
  for (const auto& v : incidence.null_space()) {
    w.basis.push_back(EdgeSet::from_ids(g, v));
  }
  w.dimension = w.basis.size();
  return w;
}

H1CutReport check_h1_cut_event(const Graph& g, const HomologyLimits& limits) {
  H1CutReport rep;
  rep.every_edge_in_triangle = edges_in_no_triangle(g).empty();

  // Route 1: homology from the clique complex by sparse elimination.
  rep.betti1 = betti_z2(g, 1, limits);
  rep.h1_zero = rep.betti1 == 0;

  // Route 2: cocycles by dense elimination, compared with the cut space.
  const auto comps = connected_components(g);
  rep.cut_dimension = g.num_vertices() - comps.count;
  const EvenSpace w = triangle_even_space(g);
  rep.even_dimension = w.dimension;
  const auto tris = triangle_edges(g);
  bool cuts_inside = true;
  for (Vertex v = 0; v < g.num_vertices() && cuts_inside; ++v) {
    EdgeSet star(g.num_edges());
    for (Vertex u : g.neighbors(v)) star.insert(g.edge_id(u, v));
    for (const auto& t : tris) {
      const int meet = star.contains(t[0]) + star.contains(t[1]) + star.contains(t[2]);
      if (meet % 2 != 0) {
        cuts_inside = false;
        break;
      }
    }
  }
  rep.even_space_is_cut_space = cuts_inside && w.dimension == rep.cut_dimension;

  if (rep.h1_zero != rep.even_space_is_cut_space) {
    throw std::logic_error("homology and cocycle routes disagree: b1 = " +
                           std::to_string(rep.betti1) + ", dim W = " +
                           std::to_string(rep.even_dimension) + ", n - c = " +
                           std::to_string(rep.cut_dimension));
  }
  return rep;
}

double homology_threshold(std::size_t n, std::size_t k) {
  if (n < 2) throw std::invalid_argument("homology_threshold: n must be at least 2");
  const double x = static_cast<double>(n);
  const double base = (1.0 + static_cast<double>(k) / 2.0) * std::log(x) / x;
  return std::pow(base, 1.0 / static_cast<double>(k + 1));
}

HomologySweep homology_sweep(std::size_t n, std::size_t k, const std::vector<double>& p_grid,
                             std::size_t trials, std::uint64_t seed, unsigned threads,
                             const HomologyLimits& limits) {
  if (p_grid.empty()) throw std::invalid_argument("homology_sweep: empty grid");
  if (trials == 0) throw std::invalid_argument("homology_sweep: trials must be positive");
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("homology_sweep: p outside [0, 1]");
  }
  if (k > 0 && n > limits.max_vertices) {
    throw InstanceTooLarge("homology_sweep: n = " + std::to_string(n) +
                           " exceeds the vertex limit " + std::to_string(limits.max_vertices));
  }
  HomologySweep out;
  out.n = n;
  out.k = k;
  out.seed = seed;
  out.threshold = homology_threshold(n, k);
  const unsigned workers = resolve_threads(threads);
  for (double p : p_grid) {
    const auto zero = detail::parallel_map<char>(trials, workers, [&](std::size_t i) -> char {
      const Graph g = sample_gnp({n, p, derive_seed(seed, i)});
      return betti_z2(g, k, limits) == 0;
    });
    HomologyRow row;
    row.p = p;
    row.trials = trials;
    row.zero_count = static_cast<std::size_t>(std::count(zero.begin(), zero.end(), 1));
    row.fraction = static_cast<double>(row.zero_count) / static_cast<double>(trials);
    row.ci = wilson_interval(row.zero_count, trials);
    out.rows.push_back(row);
  }
  return out;
}

void write_homology_csv(std::ostream& out, const HomologySweep& sweep) {
  out << "p,trials,h_k_zero_count,fraction,wilson_lo,wilson_hi\n";
  std::ostringstream line;
  line << std::fixed << std::setprecision(6);
  for (const auto& r : sweep.rows) {
    line.str("");
    line << r.p << ',' << r.trials << ',' << r.zero_count << ',' << r.fraction << ','
         << r.ci.lo << ',' << r.ci.hi << '\n';
    out << line.str();
  }
}

}  // namespace mantel
