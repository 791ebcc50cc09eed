#include <algorithm>
#include <bit>
#include <chrono>
#include <string>

#include "mantel/solvers.hpp"

namespace mantel {

namespace {

using Clock = std::chrono::steady_clock;

// Assigns vertices in order; a vertex may open at most one new class, which
// removes the symmetry between class labels.
class MultipartiteSearch {
 public:
  MultipartiteSearch(const Graph& g, std::size_t parts, std::uint64_t budget)
      : n_(g.num_vertices()), parts_(parts), budget_(budget), rows_(n_),
        label_(n_, 0), best_label_(n_, 0), masks_(parts, 0) {
    for (Vertex v = 0; v < n_; ++v) rows_[v] = g.row64(v);
    Partition seed = local_search_partition(g, parts);
    best_label_ = seed.label;
    best_ = crossing_count(g, seed);
  }

  void run() {
    if (n_ == 0) return;
    label_[0] = 0;
    masks_[0] = 1;
    search(1, 0, 1);
  }

  std::size_t best() const { return best_; }
  const std::vector<std::uint8_t>& best_label() const { return best_label_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void search(std::size_t j, std::size_t cur, std::size_t used) {
    if (++nodes_ > budget_) {
      throw InstanceTooLarge("max_multipartite: node budget exhausted");
    }
    if (j == n_) {
      if (cur > best_) {
        best_ = cur;
        best_label_ = label_;
      }
      return;
    }
    std::uint64_t assigned = 0;
    for (auto m : masks_) assigned |= m;
    const std::uint64_t rest = ~assigned & (n_ == 64 ? ~std::uint64_t{0}
                                                     : (std::uint64_t{1} << n_) - 1);
    std::size_t bound = cur;
    for (std::size_t u = j; u < n_; ++u) {
      const int back = std::popcount(rows_[u] & assigned);
      int worst = back;
      for (std::size_t c = 0; c < parts_; ++c)
        worst = std::min(worst, std::popcount(rows_[u] & masks_[c]));
      bound += static_cast<std::size_t>(back - worst);
      bound += static_cast<std::size_t>(std::popcount(rows_[u] & rest & ~((std::uint64_t{2} << u) - 1)));
    }
    if (bound <= best_) return;
    const std::size_t limit = std::min(parts_, used + 1);
    const int back = std::popcount(rows_[j] & assigned);
    for (std::size_t c = 0; c < limit; ++c) {
      const std::size_t gain = static_cast<std::size_t>(back - std::popcount(rows_[j] & masks_[c]));
      label_[j] = static_cast<std::uint8_t>(c);
      masks_[c] |= std::uint64_t{1} << j;
      search(j + 1, cur + gain, std::max(used, c + 1));
      masks_[c] &= ~(std::uint64_t{1} << j);
    }
  }

  std::size_t n_;
  std::size_t parts_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint8_t> label_;
  std::vector<std::uint8_t> best_label_;
  std::vector<std::uint64_t> masks_;
  std::size_t best_ = 0;
};

}  // namespace

SolveCertificate max_multipartite(const Graph& g, std::size_t parts,
                                  const SolveLimits& limits) {
  if (parts < 2) throw std::invalid_argument("max_multipartite: parts must be >= 2");
  if (g.num_vertices() == 0) {
    throw std::invalid_argument("max_multipartite: empty vertex set");
  }
  if (parts == 2) return max_cut(g, limits);
  if (g.num_vertices() > limits.multipartite_vertices || g.num_vertices() > 64) {
    throw InstanceTooLarge("max_multipartite: n = " + std::to_string(g.num_vertices()) +
                           " exceeds limit " +
                           std::to_string(limits.multipartite_vertices));
  }
  if (parts > 255) throw std::invalid_argument("max_multipartite: too many parts");
  const auto start = Clock::now();
  MultipartiteSearch search(g, parts, limits.node_budget);
  search.run();
  SolveCertificate cert;
  Partition part{parts, search.best_label()};
  cert.witness = crossing_edges(g, part);
  if (cert.witness.size() != search.best()) {
    throw std::logic_error("max_multipartite: witness does not attain optimum");
  }
  cert.optimum = search.best();
  cert.partition = std::move(part);
  cert.nodes_explored = search.nodes();
  cert.method = "class-assignment-branch-and-bound";
  cert.elapsed = Clock::now() - start;
  return cert;
}

}  // namespace mantel
