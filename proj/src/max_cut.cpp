#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <string>

#include "mantel/solvers.hpp"

namespace mantel {

EdgeSet crossing_edges(const Graph& g, const Partition& part) {
  if (part.label.size() != g.num_vertices()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  EdgeSet s(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (part.label[g.edge(e).u] != part.label[g.edge(e).v]) s.insert(e);
  }
  return s;
}

std::size_t crossing_count(const Graph& g, const Partition& part) {
  return crossing_edges(g, part).size();
}

Partition local_search_partition(const Graph& g, std::size_t parts) {
  const std::size_t n = g.num_vertices();
  Partition part{parts, std::vector<std::uint8_t>(n)};
  for (Vertex v = 0; v < n; ++v) part.label[v] = static_cast<std::uint8_t>(v % parts);
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  std::vector<std::size_t> count(parts);
  for (bool moved = true; moved;) {
    moved = false;
    for (Vertex v = 0; v < n; ++v) {
      std::fill(count.begin(), count.end(), 0);
      for (Vertex w : adj[v]) ++count[part.label[w]];
      std::size_t best = part.label[v];
      for (std::size_t c = 0; c < parts; ++c) {
        if (count[c] < count[best]) best = c;
      }
      if (best != part.label[v]) {
        part.label[v] = static_cast<std::uint8_t>(best);
        moved = true;
      }
    }
  }
  return part;
}

namespace {

using Clock = std::chrono::steady_clock;

struct CutSearchResult {
  std::size_t value = 0;
  std::uint64_t side_b = 0;  // bit v set: v in B
  std::uint64_t nodes = 0;
};

CutSearchResult gray_code_max_cut(std::span<const std::uint64_t> rows) {
  const std::size_t n = rows.size();
  CutSearchResult r;
  if (n <= 1) return r;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::uint64_t in_b = 0;
  std::int64_t cur = 0;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(i)) + 1;
    const std::uint64_t bit = std::uint64_t{1} << v;
    const std::uint64_t same_side = (in_b & bit) ? in_b : (all & ~in_b);
    const int same = std::popcount(rows[v] & same_side);
    const int other = std::popcount(rows[v]) - same;
    cur += same - other;
    in_b ^= bit;
    if (cur > static_cast<std::int64_t>(r.value)) {
      r.value = static_cast<std::size_t>(cur);
      r.side_b = in_b;
    }
  }
  r.nodes = total;
  return r;
}

// Russian-doll search: dolls are the suffixes k..n-1 of the vertex order and
// best[k] is the exact max cut of the doll. When solving doll k the vertices
// j..n-1 still unplaced contribute at most max(|N(u)∩A|, |N(u)∩B|) each for
// edges back to placed vertices, plus best[j] for edges among themselves.
class RussianDollMaxCut {
 public:
  RussianDollMaxCut(std::span<const std::uint64_t> rows, std::uint64_t budget)
      : rows_(rows.begin(), rows.end()), n_(rows.size()), budget_(budget),
        best_(n_ + 1, 0), best_b_(n_ + 1, 0) {}

  CutSearchResult run() {
    if (n_ <= 1) return {};
    for (std::size_t k = n_ - 1; k-- > 0;) solve_doll(k);
    return {best_[0], best_b_[0], nodes_};
  }

 private:
  void solve_doll(std::size_t k) {
    const std::uint64_t suffix = mask_from(k + 1);
    const std::uint64_t prev_b = best_b_[k + 1];
    const std::uint64_t prev_a = suffix & ~prev_b;
    const std::size_t to_a = std::popcount(rows_[k] & prev_a);
    const std::size_t to_b = std::popcount(rows_[k] & prev_b);
    // Vertex k sits in A; flip the previous doll's sides if that cuts more.
    incumbent_ = best_[k + 1] + std::max(to_a, to_b);
    incumbent_b_ = to_b >= to_a ? prev_b : prev_a;
    const std::size_t ceiling = best_[k + 1] + to_a + to_b;
    doll_ = k;
    if (incumbent_ < ceiling) {
      search(k + 1, std::uint64_t{1} << k, 0, 0);
    }
    best_[k] = incumbent_;
    best_b_[k] = incumbent_b_;
  }

  void search(std::size_t j, std::uint64_t a, std::uint64_t b, std::size_t cur) {
    if (++nodes_ > budget_) {
      throw InstanceTooLarge("max_cut: node budget exhausted");
    }
    if (j == n_) {
      if (cur > incumbent_) {
        incumbent_ = cur;
        incumbent_b_ = b;
      }
      return;
    }
    // Two bounds. The first charges each unplaced vertex its better side.
    // The second works in the complement: a cut is |A||B| minus the
    // non-edges it crosses, and each unplaced vertex must cross at least
    // min(non-neighbours in A, non-neighbours in B).
    const std::size_t na = std::popcount(a);
    const std::size_t nb = std::popcount(b);
    std::size_t bound = cur + best_[j];
    std::size_t forced = na * nb - cur;
    for (std::size_t u = j; u < n_; ++u) {
      const std::size_t da = std::popcount(rows_[u] & a);
      const std::size_t db = std::popcount(rows_[u] & b);
      bound += std::max(da, db);
      forced += std::min(na - da, nb - db);
    }
    const std::size_t doll = n_ - doll_;
    const std::size_t size_a = std::clamp(doll / 2, na, na + n_ - j);
    const std::size_t pairs = size_a * (doll - size_a);
    if (bound <= incumbent_ || pairs <= incumbent_ + forced) return;
    const std::uint64_t bit = std::uint64_t{1} << j;
    const std::size_t gain_a = std::popcount(rows_[j] & b);
    const std::size_t gain_b = std::popcount(rows_[j] & a);
    if (gain_a >= gain_b) {
      search(j + 1, a | bit, b, cur + gain_a);
      search(j + 1, a, b | bit, cur + gain_b);
    } else {
      search(j + 1, a, b | bit, cur + gain_b);
      search(j + 1, a | bit, b, cur + gain_a);
    }
  }

  std::uint64_t mask_from(std::size_t k) const {
    const std::uint64_t all =
        n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    return all & ~((std::uint64_t{1} << k) - 1);
  }

  std::vector<std::uint64_t> rows_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t doll_ = 0;
  std::vector<std::size_t> best_;
  std::vector<std::uint64_t> best_b_;
  std::size_t incumbent_ = 0;
  std::uint64_t incumbent_b_ = 0;
};

}  // namespace

SolveCertificate max_cut(const Graph& g, const SolveLimits& limits) {
  const auto start = Clock::now();
  const std::size_t n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("max_cut: empty vertex set");
  if (n > limits.max_cut_vertices || n > 64) {
    throw InstanceTooLarge("max_cut: n = " + std::to_string(n) +
                           " exceeds exact limit " +
                           std::to_string(limits.max_cut_vertices));
  }

  SolveCertificate cert;
  CutSearchResult r;
  std::vector<Vertex> order(n);  // order[new] = old
  std::iota(order.begin(), order.end(), 0);
  if (n <= limits.gray_code_vertices) {
    std::vector<std::uint64_t> rows(n);
    for (Vertex v = 0; v < n; ++v) rows[v] = g.row64(v);
    r = gray_code_max_cut(rows);
    cert.method = "gray-code";
  } else {
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return g.degree(a) > g.degree(b);
    });
    std::vector<Vertex> position(n);
    for (Vertex i = 0; i < n; ++i) position[order[i]] = i;
    std::vector<std::uint64_t> rows(n, 0);
    for (const Edge& e : g.edges()) {
      rows[position[e.u]] |= std::uint64_t{1} << position[e.v];
      rows[position[e.v]] |= std::uint64_t{1} << position[e.u];
    }
    r = RussianDollMaxCut(rows, limits.node_budget).run();
    cert.method = "russian-doll-branch-and-bound";
  }

  Partition part{2, std::vector<std::uint8_t>(n, 0)};
  for (Vertex i = 0; i < n; ++i) {
    if ((r.side_b >> i) & 1u) part.label[order[i]] = 1;
  }
  cert.witness = crossing_edges(g, part);
  if (cert.witness.size() != r.value) {
    throw std::logic_error("max_cut: witness does not attain reported value");
  }
  cert.optimum = r.value;
  cert.partition = std::move(part);
  cert.nodes_explored = r.nodes;
  cert.elapsed = Clock::now() - start;
  return cert;
}

}  // namespace mantel
