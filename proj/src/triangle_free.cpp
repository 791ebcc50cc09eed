#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <string>

#include "clique_transversal.hpp"
#include "mantel/solvers.hpp"

namespace mantel {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kNotRequested: return "NotRequested";
    case Verdict::kAllBipartite: return "AllBipartite";
    case Verdict::kNonBipartiteOptimumFound: return "NonBipartiteOptimumFound";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::size_t non_bipartite_triangle_free_max(std::size_t n) {
  return n < 5 ? 0 : (n - 1) * (n - 1) / 4 + 1;
}

std::size_t turan_edges(std::size_t s, std::size_t classes) {
  if (classes == 0) return 0;
  const std::size_t q = s / classes;
  const std::size_t rem = s % classes;
  const std::size_t inside = rem * (q + 1) * q / 2 + (classes - rem) * q * (q - 1) / 2;
  return s * (s - 1) / 2 - inside;
}

namespace {

using Clock = std::chrono::steady_clock;

bool is_kr_free(const Graph& g, const EdgeSet& f, std::size_t r) {
  if (r == 3) return is_triangle_free(g, f);
  return cliques_of_size(subgraph(g, f), r).empty();
}

void check_search_envelope(const Graph& g, const SolveLimits& limits,
                           const char* who) {
  if (g.num_vertices() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty vertex set");
  }
  if (g.num_vertices() > limits.search_vertices) {
    throw InstanceTooLarge(std::string(who) + ": n = " +
                           std::to_string(g.num_vertices()) +
                           " exceeds search limit " +
                           std::to_string(limits.search_vertices));
  }
}

// Incumbent for one class: class edges not crossing the partition. Every
// r-clique has two vertices in a common class of an (r-1)-partition.
std::vector<std::uint32_t> incumbent_from(const detail::TransversalProblem& prob,
                                          const Graph& g, const Partition& part) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < prob.edges.size(); ++i) {
    const Edge& e = g.edge(prob.edges[i]);
    if (part.label[e.u] == part.label[e.v]) out.push_back(i);
  }
  return out;
}

// Triangle-free subgraphs of g larger than this are bipartite.
std::size_t dense_bipartite_threshold(const Graph& g) {
  std::size_t used = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) used += g.degree(v) > 0;
  return non_bipartite_triangle_free_max(used);
}

struct CliqueFreeSolution {
  std::vector<detail::TransversalProblem> problems;
  std::vector<std::vector<std::uint32_t>> deletions;  // per problem, local ids
  std::size_t optimum = 0;
  EdgeSet witness;
  std::uint64_t nodes = 0;
};

CliqueFreeSolution solve_clique_free(const Graph& g, std::size_t r,
                                     const SolveLimits& limits,
                                     const std::optional<Partition>& hint) {
  CliqueFreeSolution sol;
  Partition part = hint ? *hint : local_search_partition(g, r - 1);
  if (part.label.size() != g.num_vertices()) {
    throw std::invalid_argument("hint partition size does not match graph");
  }
  sol.problems = detail::decompose(g, r);
  detail::NodeBudget budget(limits.node_budget);
  std::size_t removed_total = 0;
  sol.witness = EdgeSet::all(g);
  for (const auto& prob : sol.problems) {
    detail::TransversalSearch search(prob, budget);
    auto best = search.minimize(incumbent_from(prob, g, part));
    removed_total += best.size();
    for (std::uint32_t e : best) sol.witness.erase(prob.edges[e]);
    sol.deletions.push_back(std::move(best));
  }
  sol.optimum = g.num_edges() - removed_total;
  sol.nodes = budget.used();
  if (sol.witness.size() != sol.optimum || !is_kr_free(g, sol.witness, r)) {
    throw std::logic_error("clique-free witness failed re-verification");
  }
  return sol;
}

}  // namespace

SolveCertificate max_kr_free(const Graph& g, std::size_t r,
                             const SolveLimits& limits,
                             const std::optional<Partition>& hint) {
  if (r < 3) throw std::invalid_argument("max_kr_free: r must be >= 3");
  check_search_envelope(g, limits, "max_kr_free");
  const auto start = Clock::now();
  auto sol = solve_clique_free(g, r, limits, hint);
  SolveCertificate cert;
  cert.optimum = sol.optimum;
  cert.witness = std::move(sol.witness);
  cert.nodes_explored = sol.nodes;
  cert.method = "clique-transversal-branch-and-bound";
  cert.elapsed = Clock::now() - start;
  return cert;
}

SolveCertificate max_triangle_free(const Graph& g, const SolveLimits& limits,
                                   const std::optional<Partition>& hint) {
  return max_kr_free(g, 3, limits, hint);
}

EqualityDecision decide_t_equals_b(const Graph& g, const SolveLimits& limits) {
  check_search_envelope(g, limits, "decide_t_equals_b");
  EqualityDecision d;
  const auto cut = max_cut(g, limits);
  d.b = cut.optimum;
  d.cut = *cut.partition;
  d.nodes_explored = cut.nodes_explored;
  d.witness = cut.witness;
  // An uncut edge in no triangle extends the cut without creating one.
  const EdgeSet lone = edges_in_no_triangle(g);
  bool improved = false;
  for (EdgeId e : lone.ids()) {
    if (!d.witness.contains(e)) {
      d.witness.insert(e);
      improved = true;
    }
  }
  if (!improved && d.b <= dense_bipartite_threshold(g)) {
    detail::NodeBudget budget(limits.node_budget);
    for (const auto& prob : detail::decompose(g, 3)) {
      detail::TransversalSearch search(prob, budget);
      auto better = search.improve(incumbent_from(prob, g, *cut.partition));
      if (!better) continue;
      for (std::uint32_t i = 0; i < prob.edges.size(); ++i) d.witness.insert(prob.edges[i]);
      for (std::uint32_t e : *better) d.witness.erase(prob.edges[e]);
      improved = true;
      break;
    }
    d.nodes_explored += budget.used();
  }
  if (!is_triangle_free(g, d.witness)) {
    throw std::logic_error("decide_t_equals_b: witness is not triangle-free");
  }
  d.equal = !improved;
  if (d.equal != (d.witness.size() == d.b)) {
    throw std::logic_error("decide_t_equals_b: witness size inconsistent");
  }
  return d;
}

namespace {

// Union-find with parity and rollback; edges impose "different colour".
class ParityForest {
 public:
  explicit ParityForest(std::size_t n) : parent_(n), parity_(n, 0), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<std::uint32_t, std::uint8_t> find(std::uint32_t x) const {
    std::uint8_t p = 0;
    while (parent_[x] != x) {
      p ^= parity_[x];
      x = parent_[x];
    }
    return {x, p};
  }

  /// Adds the constraint colour(a) != colour(b); false on an odd cycle.
  bool link(std::uint32_t a, std::uint32_t b) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return pa != pb;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ 1;
    const bool bumped = rank_[ra] == rank_[rb];
    if (bumped) ++rank_[ra];
    history_.push_back({rb, bumped});
    return true;
  }

  std::size_t mark() const { return history_.size(); }
  void rollback(std::size_t mark) {
    while (history_.size() > mark) {
      auto [child, bumped] = history_.back();
      history_.pop_back();
      if (bumped) --rank_[parent_[child]];
      parent_[child] = child;
      parity_[child] = 0;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> parity_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::pair<std::uint32_t, bool>> history_;
};

// Biconnected components of g as an edge labelling (iterative Tarjan).
std::vector<std::uint32_t> edge_blocks(const Graph& g, std::size_t& count) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    adj[g.edge(e).u].push_back({g.edge(e).v, e});
    adj[g.edge(e).v].push_back({g.edge(e).u, e});
  }
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> block(g.num_edges(), kUnset);
  std::vector<std::uint32_t> disc(n, kUnset), low(n, 0);
  std::vector<EdgeId> edge_stack;
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::uint32_t time = 0;
  count = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != kUnset) continue;
    disc[root] = low[root] = time++;
    stack.push_back({root, kUnset, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.next++];
        if (e == f.via) continue;
        if (disc[w] == kUnset) {
          edge_stack.push_back(e);
          disc[w] = low[w] = time++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] >= disc[parent.v]) {
        for (;;) {
          const EdgeId e = edge_stack.back();
          edge_stack.pop_back();
          block[e] = static_cast<std::uint32_t>(count);
          if (e == done.via) break;
        }
        ++count;
      }
    }
  }
  return block;
}

// Optima of one transversal class, reduced to the distinct colour-parity
// relations they induce on the class's vertices. Two optima with the same
// relation are interchangeable for the bipartiteness of any union.
struct ClassOptions {
  std::vector<std::vector<EdgeId>> representatives;  // host edge ids kept
};

}  // namespace

SolveCertificate all_max_triangle_free_bipartite(const Graph& g,
                                                 const SolveLimits& limits) {
  check_search_envelope(g, limits, "all_max_triangle_free_bipartite");
  return all_max_triangle_free_bipartite(g, decide_t_equals_b(g, limits), limits);
}

SolveCertificate all_max_triangle_free_bipartite(const Graph& g,
                                                 const EqualityDecision& weak,
                                                 const SolveLimits& limits) {
  check_search_envelope(g, limits, "all_max_triangle_free_bipartite");
  if (weak.cut.label.size() != g.num_vertices()) {
    throw std::invalid_argument("all_max_triangle_free_bipartite: decision is for another graph");
  }
  const auto start = Clock::now();
  SolveCertificate cert;
  cert.method = "transversal-enumeration";
  cert.bipartite_optimum = weak.b;
  cert.nodes_explored = weak.nodes_explored;

  CliqueFreeSolution sol;
  if (weak.equal) {
    // The cut is optimal, so in every class its internal edges form a
    // minimum transversal.
    sol.problems = detail::decompose(g, 3);
    for (const auto& prob : sol.problems) sol.deletions.push_back(incumbent_from(prob, g, weak.cut));
    sol.witness = crossing_edges(g, weak.cut);
    sol.optimum = weak.b;
  } else {
    sol = solve_clique_free(g, 3, limits, weak.cut);
    cert.nodes_explored += sol.nodes;
  }
  cert.optimum = sol.optimum;
  cert.witness = sol.witness;

  auto finish = [&](Verdict v) {
    cert.verdict = v;
    cert.elapsed = Clock::now() - start;
    return cert;
  };
  auto non_bipartite = [&](EdgeSet f) {
    if (f.size() != cert.optimum || !is_triangle_free(g, f) || is_bipartite(g, f)) {
      throw std::logic_error("non-bipartite optimum failed re-verification");
    }
    cert.counterexample = std::move(f);
    return finish(Verdict::kNonBipartiteOptimumFound);
  };

  if (weak.equal && weak.b > dense_bipartite_threshold(g)) {
    cert.method = "dense-extremal-bound";
    return finish(Verdict::kAllBipartite);
  }
  // A bipartite optimum would have at most b(G) < t(G) edges.
  if (cert.bipartite_optimum && *cert.bipartite_optimum < cert.optimum) {
    return non_bipartite(sol.witness);
  }
  if (!is_bipartite(g, sol.witness)) return non_bipartite(sol.witness);

  const EdgeSet free_edges = edges_in_no_triangle(g);
  const std::size_t k = sol.problems.size();

  // Enumerate the optima of every class.
  std::vector<ClassOptions> options(k);
  detail::NodeBudget budget(limits.node_budget);
  std::uint64_t enumerated = 0;
  bool capped = false;
  try {
    for (std::size_t c = 0; c < k && !capped; ++c) {
      const auto& prob = sol.problems[c];
      detail::TransversalSearch search(prob, budget);
      std::set<std::vector<std::uint32_t>> signatures;
      std::vector<std::uint8_t> removed(prob.edges.size());
      std::optional<EdgeSet> found;
      search.enumerate(sol.deletions[c].size(), [&](std::span<const std::uint32_t> del) {
        if (++enumerated > limits.optima_cap) {
          capped = true;
          return false;
        }
        std::fill(removed.begin(), removed.end(), 0);
        for (std::uint32_t e : del) removed[e] = 1;
        ParityForest forest(prob.vertices.size());
        std::vector<EdgeId> kept;
        bool odd = false;
        for (std::uint32_t e = 0; e < prob.edges.size(); ++e) {
          if (removed[e]) continue;
          kept.push_back(prob.edges[e]);
          odd = odd || !forest.link(prob.head[e], prob.tail[e]);
        }
        if (odd) {
          // The class optimum itself has an odd cycle: complete it with the
          // solver's optimum elsewhere.
          EdgeSet f = sol.witness;
          for (EdgeId e : prob.edges) f.erase(e);
          for (EdgeId e : kept) f.insert(e);
          found = std::move(f);
          return false;
        }
        // Signature: each vertex's smallest tree-mate and parity against it,
        // independent of the order in which the forest was linked.
        const std::size_t nv = prob.vertices.size();
        std::vector<std::uint32_t> first(nv, ~std::uint32_t{0});
        std::vector<std::uint8_t> first_parity(nv, 0);
        std::vector<std::uint32_t> sig(nv);
        for (std::uint32_t v = 0; v < nv; ++v) {
          auto [root, parity] = forest.find(v);
          if (first[root] == ~std::uint32_t{0}) {
            first[root] = v;
            first_parity[root] = parity;
          }
          sig[v] = first[root] * 2 + (parity ^ first_parity[root]);
        }
        if (signatures.insert(std::move(sig)).second) {
          options[c].representatives.push_back(std::move(kept));
        }
        return true;
      });
      if (found) {
        cert.optima_enumerated = enumerated;
        cert.nodes_explored += budget.used();
        return non_bipartite(std::move(*found));
      }
    }
  } catch (const InstanceTooLarge&) {
    capped = true;
  }
  cert.optima_enumerated = std::min(enumerated, limits.optima_cap);
  cert.nodes_explored += budget.used();
  if (capped) return finish(Verdict::kInconclusive);

  // Odd cycles live inside blocks. Within each block, search the product of
  // class options for a combination whose union with the free edges is not
  // bipartite.
  std::size_t block_count = 0;
  const auto block = edge_blocks(g, block_count);
  std::vector<std::vector<std::size_t>> classes_in(block_count);
  for (std::size_t c = 0; c < k; ++c) {
    classes_in[block[sol.problems[c].edges.front()]].push_back(c);
  }
  ParityForest forest(g.num_vertices());
  for (EdgeId e : free_edges.ids()) {
    if (!forest.link(g.edge(e).u, g.edge(e).v)) {
      // Odd cycle of edges in no triangle: every optimum contains it.
      return non_bipartite(sol.witness);
    }
  }
  std::vector<std::size_t> choice(k, 0);
  std::uint64_t combos = 0;
  for (std::size_t blk = 0; blk < block_count; ++blk) {
    auto& cls = classes_in[blk];
    if (cls.empty()) continue;
    std::stable_sort(cls.begin(), cls.end(), [&](std::size_t a, std::size_t b) {
      return options[a].representatives.size() < options[b].representatives.size();
    });
    const std::size_t base_mark = forest.mark();
    bool hit = false;
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
      if (hit || capped) return;
      if (depth == cls.size()) return;
      const std::size_t c = cls[depth];
      for (std::size_t i = 0; i < options[c].representatives.size(); ++i) {
        if (++combos > limits.optima_cap) {
          capped = true;
          return;
        }
        const std::size_t mark = forest.mark();
        bool ok = true;
        for (EdgeId e : options[c].representatives[i]) {
          if (!forest.link(g.edge(e).u, g.edge(e).v)) {
            ok = false;
            break;
          }
        }
        choice[c] = i;
        if (!ok) {
          hit = true;
          for (std::size_t d = depth + 1; d < cls.size(); ++d) choice[cls[d]] = 0;
          forest.rollback(mark);
          return;
        }
        self(self, depth + 1);
        forest.rollback(mark);
        if (hit || capped) return;
      }
    };
    dfs(dfs, 0);
    forest.rollback(base_mark);
    if (hit) {
      EdgeSet f = sol.witness;
      for (std::size_t c : cls) {
        for (EdgeId e : sol.problems[c].edges) f.erase(e);
        for (EdgeId e : options[c].representatives[choice[c]]) f.insert(e);
      }
      return non_bipartite(std::move(f));
    }
    if (capped) return finish(Verdict::kInconclusive);
  }
  return finish(Verdict::kAllBipartite);
}

}  // namespace mantel
