#include "clique_transversal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace mantel::detail {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

constexpr std::size_t kRelaxationCliques = 16;
constexpr std::size_t kRootPivots = 200000;
constexpr std::size_t kNodePivots = 20000;
constexpr std::size_t kSeparationRounds = 40;
constexpr std::size_t kNodeRounds = 4;
constexpr std::size_t kStallRounds = 3;
constexpr double kStallGain = 0.1;
constexpr std::size_t kRowsPerVariable = 4;
constexpr std::size_t kCutsPerRound = 256;

}  // namespace

std::vector<TransversalProblem> decompose(const Graph& g, std::size_t order) {
  std::vector<std::vector<Vertex>> cliques;
  if (order == 3) {
    for (const auto& t : triangles(g)) cliques.push_back({t[0], t[1], t[2]});
  } else {
    cliques = cliques_of_size(g, order);
  }
  const std::size_t stride = order * (order - 1) / 2;
  std::vector<std::uint32_t> clique_edges;
  clique_edges.reserve(cliques.size() * stride);
  UnionFind classes(g.num_edges());
  for (const auto& c : cliques) {
    const std::size_t first = clique_edges.size();
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = i + 1; j < order; ++j)
        clique_edges.push_back(g.edge_id(c[i], c[j]));
    for (std::size_t k = first + 1; k < clique_edges.size(); ++k)
      classes.unite(clique_edges[first], clique_edges[k]);
  }

  // Class roots are their smallest edge id, so std::map orders classes
  // deterministically.
  std::map<std::uint32_t, std::vector<std::size_t>> members;
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    members[classes.find(clique_edges[c * stride])].push_back(c);
  }

  std::vector<TransversalProblem> out;
  out.reserve(members.size());
  std::vector<std::int64_t> local_edge(g.num_edges(), -1);
  std::vector<std::int64_t> local_vertex(g.num_vertices(), -1);
  for (const auto& [root, ids] : members) {
    TransversalProblem prob;
    prob.order = order;
    for (std::size_t c : ids) {
      for (std::size_t k = 0; k < stride; ++k) {
        const EdgeId e = clique_edges[c * stride + k];
        if (local_edge[e] < 0) {
          local_edge[e] = 0;
          prob.edges.push_back(e);
        }
      }
      for (Vertex v : cliques[c]) {
        if (local_vertex[v] < 0) {
          local_vertex[v] = 0;
          prob.vertices.push_back(v);
        }
      }
    }
    std::sort(prob.edges.begin(), prob.edges.end());
    std::sort(prob.vertices.begin(), prob.vertices.end());
    for (std::size_t i = 0; i < prob.edges.size(); ++i)
      local_edge[prob.edges[i]] = static_cast<std::int64_t>(i);
    for (std::size_t i = 0; i < prob.vertices.size(); ++i)
      local_vertex[prob.vertices[i]] = static_cast<std::int64_t>(i);
    for (EdgeId e : prob.edges) {
      prob.head.push_back(static_cast<std::uint32_t>(local_vertex[g.edge(e).u]));
      prob.tail.push_back(static_cast<std::uint32_t>(local_vertex[g.edge(e).v]));
    }
    for (std::size_t c : ids) {
      for (std::size_t k = 0; k < stride; ++k) {
        prob.clique_edges.push_back(
            static_cast<std::uint32_t>(local_edge[clique_edges[c * stride + k]]));
      }
      for (Vertex v : cliques[c]) {
        prob.clique_vertices.push_back(static_cast<std::uint32_t>(local_vertex[v]));
      }
    }
    for (EdgeId e : prob.edges) local_edge[e] = -1;
    for (Vertex v : prob.vertices) local_vertex[v] = -1;
    out.push_back(std::move(prob));
  }
  return out;
}

TransversalSearch::TransversalSearch(const TransversalProblem& problem,
                                     NodeBudget& budget)
    : problem_(problem), budget_(budget),
      stride_(problem.order * (problem.order - 1) / 2),
      words_((problem.vertices.size() + 63) / 64),
      incident_(problem.edges.size()),
      status_(problem.edges.size(), kFree),
      alive_count_(problem.edges.size(), 0),
      deleted_in_(problem.num_cliques(), 0),
      kept_in_(problem.num_cliques(), 0),
      rows_(problem.vertices.size() * words_, 0),
      scratch_(rows_.size(), 0) {
  const std::size_t nv = problem.vertices.size();
  deficiency_.assign(nv + 1, 0);
  for (std::size_t s = problem.order; s <= nv; ++s) {
    deficiency_[s] = s * (s - 1) / 2 - turan_edges(s, problem.order - 1);
  }
  for (std::uint32_t h = 0; h < problem.num_cliques(); ++h) {
    for (std::size_t k = 0; k < stride_; ++k) {
      const std::uint32_t e = problem.clique_edges[h * stride_ + k];
      incident_[e].push_back(h);
      ++alive_count_[e];
    }
  }
  for (std::size_t e = 0; e < problem.edges.size(); ++e) {
    const std::uint32_t a = problem.head[e];
    const std::uint32_t b = problem.tail[e];
    rows_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    rows_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  }
}

TransversalSearch::~TransversalSearch() = default;

void TransversalSearch::remove_edge(std::uint32_t e) {
  status_[e] = kDeleted;
  removed_.push_back(e);
  trail_.push_back({e, kDeleted});
  const std::uint32_t a = problem_.head[e];
  const std::uint32_t b = problem_.tail[e];
  rows_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63));
  rows_[b * words_ + (a >> 6)] &= ~(std::uint64_t{1} << (a & 63));
  for (std::uint32_t h : incident_[e]) {
    if (deleted_in_[h]++ == 0) {
      for (std::size_t k = 0; k < stride_; ++k) {
        const std::uint32_t f = problem_.clique_edges[h * stride_ + k];
        if (f != e) --alive_count_[f];
      }
    }
  }
}

void TransversalSearch::keep_edge(std::uint32_t e) {
  status_[e] = kKept;
  trail_.push_back({e, kKept});
  for (std::uint32_t h : incident_[e]) {
    if (++kept_in_[h] + 1 >= stride_ && deleted_in_[h] == 0) {
      pending_.push_back(h);
    }
  }
}

void TransversalSearch::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    const TrailEntry entry = trail_.back();
    trail_.pop_back();
    const std::uint32_t e = entry.edge;
    if (entry.action == kDeleted) {
      for (std::uint32_t h : incident_[e]) {
        if (--deleted_in_[h] == 0) {
          for (std::size_t k = 0; k < stride_; ++k) {
            const std::uint32_t f = problem_.clique_edges[h * stride_ + k];
            if (f != e) ++alive_count_[f];
          }
        }
      }
      const std::uint32_t a = problem_.head[e];
      const std::uint32_t b = problem_.tail[e];
      rows_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
      rows_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
      removed_.pop_back();
    } else {
      for (std::uint32_t h : incident_[e]) --kept_in_[h];
    }
    status_[e] = kFree;
  }
}

bool TransversalSearch::propagate() {
  while (!pending_.empty()) {
    const std::uint32_t h = pending_.back();
    pending_.pop_back();
    if (deleted_in_[h] != 0) continue;
    if (kept_in_[h] == stride_) {
      pending_.clear();
      return false;
    }
    if (kept_in_[h] + 1 == stride_) {
      for (std::size_t k = 0; k < stride_; ++k) {
        const std::uint32_t f = problem_.clique_edges[h * stride_ + k];
        if (status_[f] == kFree) {
          remove_edge(f);
          break;
        }
      }
    }
  }
  return true;
}

// Greedy packing of edge-disjoint cliques in the current graph. A clique on s
// vertices keeps at most turan_edges(s, r-1) edges in any K_r-free subgraph,
// so each packed clique forces deficiency_[s] further deletions.
std::size_t TransversalSearch::packing_bound(std::vector<std::vector<std::uint32_t>>* packed) {
  std::copy(rows_.begin(), rows_.end(), scratch_.begin());
  const std::size_t r = problem_.order;
  std::vector<std::uint32_t> members;
  std::vector<std::uint64_t> common(words_);
  std::size_t bound = 0;
  auto has = [&](std::uint32_t a, std::uint32_t b) {
    return (scratch_[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
  };
  for (std::size_t h = 0; h < problem_.num_cliques(); ++h) {
    if (deleted_in_[h] != 0) continue;
    const std::uint32_t* vs = &problem_.clique_vertices[h * r];
    bool free = true;
    for (std::size_t i = 0; i < r && free; ++i)
      for (std::size_t j = i + 1; j < r && free; ++j) free = has(vs[i], vs[j]);
    if (!free) continue;
    members.assign(vs, vs + r);
    std::fill(common.begin(), common.end(), ~std::uint64_t{0});
    for (std::uint32_t v : members)
      for (std::size_t w = 0; w < words_; ++w) common[w] &= scratch_[v * words_ + w];
    for (;;) {
      std::int64_t pick = -1;
      int pick_score = -1;
      for (std::size_t w = 0; w < words_; ++w) {
        for (std::uint64_t bits = common[w]; bits; bits &= bits - 1) {
          const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
          int score = 0;
          for (std::size_t x = 0; x < words_; ++x)
            score += std::popcount(common[x] & scratch_[v * words_ + x]);
          if (score > pick_score) {
            pick_score = score;
            pick = v;
          }
        }
      }
      if (pick < 0) break;
      const auto v = static_cast<std::uint32_t>(pick);
      members.push_back(v);
      for (std::size_t w = 0; w < words_; ++w) common[w] &= scratch_[v * words_ + w];
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const std::uint32_t a = members[i];
        const std::uint32_t b = members[j];
        scratch_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63));
        scratch_[b * words_ + (a >> 6)] &= ~(std::uint64_t{1} << (a & 63));
      }
    }
    bound += deficiency_[members.size()];
    if (packed) packed->push_back(members);
  }
  return bound;
}

// Intact clique whose free edges lie in the most other intact cliques; the
// lowest index wins ties.
std::ptrdiff_t TransversalSearch::pick_clique() const {
  std::ptrdiff_t best = -1;
  std::int64_t best_score = -1;
  for (std::size_t h = 0; h < problem_.num_cliques(); ++h) {
    if (deleted_in_[h] != 0) continue;
    std::int64_t score = 0;
    for (std::size_t k = 0; k < stride_; ++k) {
      const std::uint32_t e = problem_.clique_edges[h * stride_ + k];
      if (status_[e] == kFree) score += alive_count_[e] - 1;
    }
    if (score > best_score) {
      best_score = score;
      best = static_cast<std::ptrdiff_t>(h);
    }
  }
  return best;
}

void TransversalSearch::search() {
  budget_.charge();
  if (!propagate()) return;
  const std::size_t removed = removed_.size();
  if (mode_ == Mode::kMinimize ? removed >= best_.size() : removed > target_) {
    return;
  }
  const std::ptrdiff_t h = pick_clique();
  if (h < 0) {
    if (mode_ == Mode::kMinimize) {
      best_ = removed_;
      stopped_ = first_only_;
    } else if (removed == target_ && !(*visit_)(removed_)) {
      stopped_ = true;
    }
    return;
  }
  auto prunes = [&](std::size_t bound) {
    return mode_ == Mode::kMinimize ? bound >= best_.size() : bound > target_;
  };
  if (prunes(removed + packing_bound())) return;
  if (problem_.order == 3 && problem_.num_cliques() >= kRelaxationCliques) {
    if (!lp_) build_relaxation();
    if (prunes(relaxation_bound())) return;
    if (mode_ == Mode::kMinimize) {
      round_relaxation();
      if (stopped_) return;
    }
  }

  std::vector<std::uint32_t> branch;
  for (std::size_t k = 0; k < stride_; ++k) {
    const std::uint32_t e = problem_.clique_edges[h * stride_ + k];
    if (status_[e] == kFree) branch.push_back(e);
  }
  std::stable_sort(branch.begin(), branch.end(), [&](auto a, auto b) {
    return alive_count_[a] > alive_count_[b];
  });
  for (std::size_t i = 0; i < branch.size(); ++i) {
    const std::size_t mark = trail_.size();
    for (std::size_t j = 0; j < i; ++j) keep_edge(branch[j]);
    remove_edge(branch[i]);
    search();
    undo_to(mark);
    pending_.clear();
    if (stopped_) return;
  }
}

std::vector<std::uint32_t> TransversalSearch::minimize(
    std::vector<std::uint32_t> incumbent) {
  mode_ = Mode::kMinimize;
  first_only_ = false;
  stopped_ = false;
  best_ = std::move(incumbent);
  search();
  return best_;
}

std::optional<std::vector<std::uint32_t>> TransversalSearch::improve(
    std::vector<std::uint32_t> incumbent) {
  mode_ = Mode::kMinimize;
  first_only_ = true;
  stopped_ = false;
  const std::size_t size = incumbent.size();
  best_ = std::move(incumbent);
  search();
  first_only_ = false;
  if (best_.size() < size) return best_;
  return std::nullopt;
}

bool TransversalSearch::enumerate(
    std::size_t size,
    const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  mode_ = Mode::kEnumerate;
  target_ = size;
  visit_ = &visit;
  stopped_ = false;
  search();
  visit_ = nullptr;
  return !stopped_;
}

std::size_t TransversalSearch::root_bound() {
  std::size_t bound = packing_bound();
  if (problem_.order == 3 && problem_.num_cliques() >= kRelaxationCliques) {
    if (!lp_) build_relaxation();
    bound = std::max(bound, relaxation_bound());
  }
  return bound;
}

void TransversalSearch::build_relaxation() {
  const std::size_t nv = problem_.vertices.size();
  edge_at_.assign(nv * nv, -1);
  for (std::size_t e = 0; e < problem_.edges.size(); ++e) {
    edge_at_[problem_.head[e] * nv + problem_.tail[e]] = static_cast<std::int32_t>(e);
    edge_at_[problem_.tail[e] * nv + problem_.head[e]] = static_cast<std::int32_t>(e);
  }
  lp_ = std::make_unique<CoveringLp>(problem_.edges.size());
  // Start from the greedy packing; triangles enter only once violated.
  std::vector<std::vector<std::uint32_t>> packed;
  packing_bound(&packed);
  std::vector<std::uint32_t> row;
  for (const auto& members : packed) {
    row.clear();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        row.push_back(static_cast<std::uint32_t>(edge_at_[members[i] * nv + members[j]]));
    lp_->add_row(row, static_cast<double>(deficiency_[members.size()]));
  }
  for (std::size_t e = 0; e < problem_.edges.size(); ++e) lp_->set_bounds(e, 0, 1);
  // Separation stops once the bound prunes, or when it stalls.
  std::vector<double> history;
  for (std::size_t round = 0; round < kSeparationRounds; ++round) {
    const auto res = lp_->solve(kRootPivots);
    charge_pivots(res.pivots);
    if (!res.optimal || res.infeasible) break;
    const double rounded = std::ceil(res.bound - 1e-6);
    if (mode_ == Mode::kMinimize ? rounded >= static_cast<double>(best_.size())
                                 : rounded > static_cast<double>(target_)) {
      break;
    }
    history.push_back(res.bound);
    if (history.size() > kStallRounds &&
        res.bound - history[history.size() - 1 - kStallRounds] < kStallGain) {
      break;
    }
    lp_->drop_slack_rows();
    if (separate_triangles() + separate_cliques() == 0) break;
  }
}

std::size_t TransversalSearch::separate_triangles() {
  const std::vector<double>& x = lp_->values();
  std::size_t added = 0;
  for (std::size_t h = 0; h < problem_.num_cliques(); ++h) {
    const std::uint32_t* es = &problem_.clique_edges[h * stride_];
    if (x[es[0]] + x[es[1]] + x[es[2]] < 1.0 - 1e-6) {
      lp_->add_row(std::span(es, stride_), 1.0);
      ++added;
    }
  }
  return added;
}

// Grows each triangle greedily into larger cliques, adding the vertex whose
// edges to the current clique carry the least weight, and keeps the prefix
// that violates its clique row the most.
std::size_t TransversalSearch::separate_cliques() {
  const std::size_t nv = problem_.vertices.size();
  const std::vector<double>& x = lp_->values();
  std::vector<std::uint64_t> full(nv * words_, 0);
  for (std::size_t e = 0; e < problem_.edges.size(); ++e) {
    const std::uint32_t a = problem_.head[e];
    const std::uint32_t b = problem_.tail[e];
    full[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    full[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  }
  auto weight = [&](std::uint32_t a, std::uint32_t b) {
    return x[static_cast<std::size_t>(edge_at_[a * nv + b])];
  };
  std::vector<std::pair<double, std::vector<std::uint32_t>>> found;
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint64_t> cand(words_);
  for (std::size_t h = 0; h < problem_.num_cliques(); ++h) {
    std::vector<std::uint32_t> members(&problem_.clique_vertices[h * 3],
                                       &problem_.clique_vertices[h * 3] + 3);
    double load = weight(members[0], members[1]) + weight(members[0], members[2]) +
                  weight(members[1], members[2]);
    if (load > 1.5) continue;
    std::fill(cand.begin(), cand.end(), ~std::uint64_t{0});
    for (std::uint32_t v : members)
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= full[v * words_ + w];
    double best_violation = 1e-6;
    std::size_t best_size = 0;
    for (;;) {
      std::int64_t pick = -1;
      double pick_load = 0.0;
      for (std::size_t w = 0; w < words_; ++w) {
        for (std::uint64_t bits = cand[w]; bits; bits &= bits - 1) {
          const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
          double add = 0.0;
          for (std::uint32_t u : members) add += weight(u, v);
          if (pick < 0 || add < pick_load) {
            pick = v;
            pick_load = add;
          }
        }
      }
      if (pick < 0) break;
      const auto v = static_cast<std::uint32_t>(pick);
      members.push_back(v);
      load += pick_load;
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= full[v * words_ + w];
      const double violation = static_cast<double>(deficiency_[members.size()]) - load;
      if (members.size() >= 5 && violation > best_violation) {
        best_violation = violation;
        best_size = members.size();
      }
    }
    if (best_size == 0) continue;
    members.resize(best_size);
    std::sort(members.begin(), members.end());
    if (seen.insert(members).second) found.emplace_back(best_violation, std::move(members));
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (found.size() > kCutsPerRound) found.resize(kCutsPerRound);
  std::vector<std::uint32_t> row;
  for (const auto& [violation, members] : found) {
    row.clear();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        row.push_back(static_cast<std::uint32_t>(edge_at_[members[i] * nv + members[j]]));
    lp_->add_row(row, static_cast<double>(deficiency_[members.size()]));
  }
  return found.size();
}

std::size_t TransversalSearch::relaxation_bound() {
  for (std::size_t e = 0; e < status_.size(); ++e) {
    const std::uint8_t lo = status_[e] == kDeleted ? 1 : 0;
    const std::uint8_t up = status_[e] == kKept ? 0 : 1;
    lp_->set_bounds(static_cast<std::uint32_t>(e), lo, up);
  }
  const double cutoff = mode_ == Mode::kMinimize ? static_cast<double>(best_.size()) - 1.0
                                                  : static_cast<double>(target_);
  const double stop = cutoff + 1e-5;  // rounds up past the pruning threshold
  double bound = 0.0;
  for (std::size_t round = 0; round < kNodeRounds; ++round) {
    const auto res = lp_->solve(kNodePivots, stop);
    charge_pivots(res.pivots);
    if (res.infeasible) return std::numeric_limits<std::size_t>::max();
    bound = res.bound;
    if (!res.optimal || bound >= stop || separate_triangles() == 0) break;
  }
  if (lp_->num_rows() > kRowsPerVariable * lp_->num_vars()) lp_->drop_slack_rows();
  const double b = std::ceil(bound - 1e-6);
  return b <= 0 ? 0 : static_cast<std::size_t>(b);
}

void TransversalSearch::round_relaxation() {
  const std::vector<double>& x = lp_->values();
  std::vector<std::uint32_t> order;
  for (std::uint32_t e = 0; e < status_.size(); ++e)
    if (status_[e] == kFree) order.push_back(e);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (x[a] != x[b]) return x[a] > x[b];
    return alive_count_[a] > alive_count_[b];
  });
  std::vector<std::uint32_t> hits(deleted_in_);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t e : order) {
    bool needed = false;
    for (std::uint32_t h : incident_[e]) needed = needed || hits[h] == 0;
    if (!needed) continue;
    chosen.push_back(e);
    for (std::uint32_t h : incident_[e]) ++hits[h];
  }
  // Drop deletions made redundant by later ones, least fractional first.
  std::vector<std::uint32_t> kept_out;
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    bool redundant = true;
    for (std::uint32_t h : incident_[*it]) redundant = redundant && hits[h] >= 2;
    if (redundant) {
      for (std::uint32_t h : incident_[*it]) --hits[h];
    } else {
      kept_out.push_back(*it);
    }
  }
  if (removed_.size() + kept_out.size() >= best_.size()) return;
  best_ = removed_;
  best_.insert(best_.end(), kept_out.begin(), kept_out.end());
  stopped_ = first_only_;
}

}  // namespace mantel::detail
