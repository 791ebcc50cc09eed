#include "mantel/cut_structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "exact.hpp"
#include "max_flow.hpp"
#include "mantel/random.hpp"

namespace mantel {

using detail::exact;
using detail::exact_decimal;
using detail::Rational;

ParamConfig ParamConfig::with_epsilon(double epsilon) {
  ParamConfig cfg;
  cfg.epsilon = epsilon;
  const Rational e = exact_decimal(epsilon);
  if (e > 0) cfg.K = Rational(4 / (e * e)).convert_to<double>();
  return cfg;
}

void ParamConfig::validate() const {
  const Rational e = exact_decimal(epsilon);
  const Rational h = exact_decimal(eta);
  const Rational a = exact_decimal(alpha);
  const Rational z = exact_decimal(zeta);
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("ParamConfig: ") + what); };
  if (!(e > 0 && e < Rational(1, 2))) fail("epsilon must lie in (0, 1/2)");
  if (!(h > 0)) fail("eta must be positive");
  if (h * 10 > e) fail("eta must be at most epsilon/10");
  if (!(a > 0 && a < 1)) fail("alpha must lie in (0, 1)");
  if (!(z > 0)) fail("zeta must be positive");
  if (!(exact_decimal(K) > 0)) fail("K must be positive");
  if (!(exact_decimal(C) > 0)) fail("C must be positive");
  const Rational gamma = (1 - 2 * e) / 4;
  const Rational theta = Rational(9, 10) - 2 * z / gamma - a / (1 - 2 * e);
  if (!(theta > 0)) fail("vartheta = .9 - 2 zeta/gamma_c - alpha' must be positive");
}

// ---------------------------------------------------------------------------

Cut::Cut(std::vector<std::uint8_t> in_b) : side_(std::move(in_b)) {
  for (auto s : side_) {
    if (s > 1) throw std::invalid_argument("Cut: side labels must be 0 (A) or 1 (B)");
  }
}

Cut Cut::from_a(std::size_t n, std::span<const Vertex> a) {
  std::vector<std::uint8_t> side(n, 1);
  for (Vertex v : a) {
    if (v >= n) throw std::invalid_argument("Cut: vertex out of range");
    if (side[v] == 0) throw std::invalid_argument("Cut: vertex listed twice");
    side[v] = 0;
  }
  return Cut(std::move(side));
}

Cut Cut::from_partition(const Partition& part) {
  if (part.classes != 2) throw std::invalid_argument("Cut: partition must have two classes");
  return Cut(part.label);
}

std::size_t Cut::size_a() const {
  return static_cast<std::size_t>(std::count(side_.begin(), side_.end(), 0));
}

std::vector<Vertex> Cut::a() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < side_.size(); ++v)
    if (side_[v] == 0) out.push_back(v);
  return out;
}

std::vector<Vertex> Cut::b() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < side_.size(); ++v)
    if (side_[v] == 1) out.push_back(v);
  return out;
}

Cut Cut::swapped() const {
  std::vector<std::uint8_t> side(side_);
  for (auto& s : side) s ^= 1;
  return Cut(std::move(side));
}

bool Cut::balanced(double eta) const {
  const Rational h = exact_decimal(eta);
  const long long diff = 2 * static_cast<long long>(size_a()) - static_cast<long long>(num_vertices());
  return exact(static_cast<std::size_t>(std::llabs(diff))) <= h * exact(num_vertices());
}

namespace {

void require_cut_of(const Graph& g, const Cut& pi) {
  if (pi.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("cut does not partition the graph's vertex set");
  }
}

void require_density(double p) {
  if (!std::isfinite(p) || p < 0) throw std::invalid_argument("density must be finite and nonnegative");
}

std::vector<std::uint64_t> side_mask(const Graph& g, const Cut& pi, std::uint8_t side) {
  std::vector<std::uint64_t> mask(g.words_per_row(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (pi.sides()[v] == side) mask[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  return mask;
}

VertexPair normalized(VertexPair q) {
  if (q.first > q.second) std::swap(q.first, q.second);
  return q;
}

}  // namespace

std::size_t cut_size(const Graph& g, const Cut& pi) {
  require_cut_of(g, pi);
  return crossing_count(g, pi.partition());
}

// ---------------------------------------------------------------------------

std::size_t CutProfile::pair_slot(Vertex x, Vertex y) const {
  if (x == y || x >= index_in_a_.size() || y >= index_in_a_.size() || index_in_a_[x] < 0 ||
      index_in_a_[y] < 0) {
    throw std::out_of_range("CutProfile: pair is not two distinct vertices of A");
  }
  auto i = static_cast<std::size_t>(index_in_a_[x]);
  auto j = static_cast<std::size_t>(index_in_a_[y]);
  if (i > j) std::swap(i, j);
  const std::size_t a = A.size();
  return i * (2 * a - i - 1) / 2 + (j - i - 1);
}

std::uint32_t CutProfile::codegree_b(Vertex x, Vertex y) const {
  return pair_codegree_[pair_slot(x, y)];
}

bool CutProfile::in_q(Vertex x, Vertex y) const {
  if (x == y || x >= index_in_a_.size() || y >= index_in_a_.size()) return false;
  if (index_in_a_[x] < 0 || index_in_a_[y] < 0) return false;
  return pair_in_q_[pair_slot(x, y)] != 0;
}

std::vector<VertexPair> CutProfile::Q() const {
  std::vector<VertexPair> out(Q_v);
  out.insert(out.end(), Q_e.begin(), Q_e.end());
  std::sort(out.begin(), out.end());
  return out;
}

CutProfile cut_profile(const Graph& g, const Cut& pi, const ParamConfig& cfg, double p) {
  require_cut_of(g, pi);
  require_density(p);
  cfg.validate();
  const std::size_t n = g.num_vertices();
  const Rational e = exact_decimal(cfg.epsilon);
  const Rational a = exact_decimal(cfg.alpha);
  const Rational P = exact_decimal(p);
  const Rational np = exact(n) * P;
  const Rational np2 = np * P;

  CutProfile prof;
  prof.n = n;
  prof.p = p;
  const Rational x_thr = (1 - 2 * e) * np / 4;
  const Rational t_thr = (1 - e) * np / 2;
  const Rational q_thr[3] = {a * np2 / 2, a * np2 / 4, a * np2 / 8};
  prof.x_cutoff = detail::strict_cutoff(x_thr);
  prof.t_cutoff = detail::strict_cutoff(t_thr);
  prof.x_threshold = x_thr.convert_to<double>();
  prof.t_threshold = t_thr.convert_to<double>();
  for (int k = 0; k < 3; ++k) {
    prof.q_cutoff[k] = detail::strict_cutoff(q_thr[k]);
    prof.q_threshold[k] = q_thr[k].convert_to<double>();
  }

  const auto in_b = side_mask(g, pi, 1);
  prof.d_B.resize(n);
  for (Vertex v = 0; v < n; ++v) prof.d_B[v] = static_cast<std::uint32_t>(g.degree_into(v, in_b));

  prof.A = pi.a();
  prof.index_in_a_.assign(n, -1);
  for (std::size_t i = 0; i < prof.A.size(); ++i) prof.index_in_a_[prof.A[i]] = static_cast<std::int32_t>(i);
  std::vector<std::uint8_t> in_x(n, 0), in_t(n, 0);
  for (Vertex x : prof.A) {
    in_x[x] = prof.d_B[x] < prof.x_cutoff;
    in_t[x] = prof.d_B[x] < prof.t_cutoff;
    if (in_x[x]) prof.X.push_back(x);
    if (in_t[x]) prof.T.push_back(x);
    if (in_t[x] && !in_x[x]) prof.T_minus_X.push_back(x);
  }

  const std::size_t na = prof.A.size();
  const std::size_t slots = na < 2 ? 0 : na * (na - 1) / 2;
  prof.pair_codegree_.assign(slots, 0);
  prof.pair_in_q_.assign(slots, 0);
  const std::size_t words = g.words_per_row();
  std::size_t slot = 0;
  for (std::size_t i = 0; i < na; ++i) {
    const Vertex x = prof.A[i];
    const auto rx = g.row(x);
    for (std::size_t j = i + 1; j < na; ++j, ++slot) {
      const Vertex y = prof.A[j];
      const auto ry = g.row(y);
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < words; ++w) c += std::popcount(rx[w] & ry[w] & in_b[w]);
      prof.pair_codegree_[slot] = c;
      if (in_x[x] || in_x[y]) {
        prof.pair_in_q_[slot] = 1;
        prof.Q_v.emplace_back(x, y);
      } else if (c < prof.q_cutoff[in_t[x] + in_t[y]]) {
        prof.pair_in_q_[slot] = 1;
        prof.Q_e.emplace_back(x, y);
      }
    }
  }
  return prof;
}

std::vector<VertexPair> q_edges(const Graph& g, const CutProfile& profile) {
  std::vector<VertexPair> out;
  for (const auto& q : profile.Q()) {
    if (g.has_edge(q.first, q.second)) out.push_back(q);
  }
  return out;
}

std::size_t phi(const Graph& g, const EdgeSet& f, const Cut& pi) {
  require_cut_of(g, pi);
  if (f.width() != g.num_edges()) throw std::invalid_argument("phi: edge set of another graph");
  std::size_t total = 0;
  for (EdgeId e : f.ids()) {
    const Edge& ed = g.edge(e);
    const int in_a = pi.in_a(ed.u) + pi.in_a(ed.v);
    total += in_a == 2 ? 2 : (in_a == 1 ? 1 : 0);
  }
  return total;
}

// ---------------------------------------------------------------------------

CutDominanceReport check_cut_dominance(const Graph& g, const Cut& pi, const EdgeSet& f,
                                       const ParamConfig& cfg, double p) {
  if (f.width() != g.num_edges()) throw std::invalid_argument("check_cut_dominance: edge set of another graph");
  const CutProfile prof = cut_profile(g, pi, cfg, p);
  CutDominanceReport r;
  r.balanced = pi.balanced(cfg.eta);
  r.triangle_free = is_triangle_free(g, f);
  r.differs_from_cut = f != crossing_edges(g, pi.partition());
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> to_a(n, 0), to_b(n, 0);
  for (EdgeId e : f.ids()) {
    const Edge& ed = g.edge(e);
    const bool ua = pi.in_a(ed.u), va = pi.in_a(ed.v);
    if (ua && va) {
      ++r.f_in_a;
      if (prof.in_q(ed.u, ed.v)) ++r.f_in_q;
    } else if (!ua && !va) {
      ++r.f_in_b;
    } else {
      ++r.f_across;
    }
    (va ? to_a : to_b)[ed.u]++;
    (ua ? to_a : to_b)[ed.v]++;
  }
  r.avoids_q = r.f_in_q == 0;
  r.empty_in_b = r.f_in_b == 0;
  r.sparse_inside = exact(r.f_in_a) < exact_decimal(cfg.eta) * exact(r.f_across);
  for (Vertex x : prof.A) {
    if (to_b[x] < to_a[x]) r.majority_violators.push_back(x);
  }
  r.crossing_majority = r.majority_violators.empty();
  r.phi = 2 * r.f_in_a + r.f_across;
  r.cut_size = cut_size(g, pi);
  r.conclusion = r.phi < r.cut_size;
  return r;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kEvaluated: return "evaluated";
    case CheckStatus::kSkipped: return "skipped";
    case CheckStatus::kEmptyDomain: return "empty-domain";
  }
  return "?";
}

PairGainReport check_pair_gain(const Graph& g, const Cut& pi,
                               const std::vector<VertexPair>& q,
                               const ParamConfig& cfg, double p,
                               const SolveLimits& limits) {
  const CutProfile prof = cut_profile(g, pi, cfg, p);
  std::set<VertexPair> seen;
  for (const auto& raw : q) {
    const VertexPair e = normalized(raw);
    if (e.first == e.second || e.second >= g.num_vertices() || !g.has_edge(e.first, e.second)) {
      throw std::invalid_argument("check_pair_gain: q contains a pair that is not an edge of g");
    }
    if (!prof.in_q(e.first, e.second)) {
      throw std::invalid_argument("check_pair_gain: q contains a pair outside Q(Pi)");
    }
    if (!seen.insert(e).second) throw std::invalid_argument("check_pair_gain: repeated pair in q");
  }
  PairGainReport r;
  r.cut_size = cut_size(g, pi);
  r.q_size = q.size();
  if (q_edges(g, prof).empty()) {
    r.status = CheckStatus::kEmptyDomain;
    return r;
  }
  if (q.empty()) {
    r.status = CheckStatus::kSkipped;
    return r;
  }
  r.status = CheckStatus::kEvaluated;
  std::vector<std::size_t> d_q(g.num_vertices(), 0);
  const std::set<VertexPair> qv(prof.Q_v.begin(), prof.Q_v.end());
  for (const auto& e : seen) {
    ++d_q[e.first];
    ++d_q[e.second];
    (qv.count(e) ? r.q_in_qv : r.q_in_qe)++;
  }
  for (Vertex x : prof.A) {
    if (d_q[x] > prof.d_B[x]) r.degree_violators.push_back(x);
  }
  r.degree_condition = r.degree_violators.empty();
  r.b = max_cut(g, limits).optimum;
  r.bound = r.cut_size + 2 * r.q_size;
  r.conclusion = r.b > r.bound;
  if (p > 0) {
    const double n = static_cast<double>(g.num_vertices());
    r.realized_delta = (static_cast<double>(r.b) - static_cast<double>(r.cut_size)) /
                       (static_cast<double>(r.q_size) * n * p * p);
  }
  return r;
}

std::pair<Cut, PromotionReport> promote_cut(const Graph& g, const Cut& pi,
                                            const ParamConfig& cfg, double p) {
  const CutProfile prof = cut_profile(g, pi, cfg, p);
  std::vector<std::uint8_t> side = pi.sides();
  for (Vertex x : prof.X) side[x] = 1;
  Cut star(std::move(side));
  PromotionReport r;
  r.x_size = prof.X.size();
  r.before = cut_size(g, pi);
  r.after = cut_size(g, star);
  r.gain = static_cast<long long>(r.after) - static_cast<long long>(r.before);
  for (Vertex x : prof.X) {
    r.degree_sum += static_cast<long long>(g.degree(x)) - 2 * static_cast<long long>(prof.d_B[x]) -
                    static_cast<long long>(r.x_size);
  }
  r.benchmark = static_cast<double>(r.x_size) * static_cast<double>(g.num_vertices()) * p / 2;
  r.meets_degree_sum = r.gain >= r.degree_sum;
  const Rational bench = exact(r.x_size) * exact(g.num_vertices()) * exact_decimal(p) / 2;
  r.meets_benchmark = Rational(r.gain) >= bench;
  return {std::move(star), r};
}

// ---------------------------------------------------------------------------

std::vector<VertexPair> bipartite_half(const std::vector<VertexPair>& q) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& raw : q) {
    const VertexPair e = normalized(raw);
    if (e.first == e.second) throw std::invalid_argument("bipartite_half: loop pair");
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::map<Vertex, std::uint8_t> label;
  for (const auto& [v, _] : adj) label[v] = 0;
  // Flip any vertex with more neighbours on its own side; each flip raises
  // the number of split pairs, and at the end every vertex splits at least
  // half of its pairs.
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& [v, nbrs] : adj) {
      std::size_t same = 0;
      for (Vertex w : nbrs) same += label[w] == label[v];
      if (2 * same > nbrs.size()) {
        label[v] ^= 1;
        moved = true;
      }
    }
  }
  std::vector<VertexPair> out;
  for (const auto& raw : q) {
    const VertexPair e = normalized(raw);
    if (label[e.first] == label[e.second]) continue;
    out.push_back(label[e.first] == 0 ? e : VertexPair{e.second, e.first});
  }
  return out;
}

ExtractionReport extract_bounded_bipartite(const std::vector<VertexPair>& q,
                                           double tau, double p, double K,
                                           std::optional<std::size_t> original_size) {
  if (!std::isfinite(tau) || tau <= 0) throw std::invalid_argument("extract_bounded_bipartite: tau must be positive");
  if (!std::isfinite(p) || p <= 0) throw std::invalid_argument("extract_bounded_bipartite: p must be positive");
  if (!std::isfinite(K) || K <= 0) throw std::invalid_argument("extract_bounded_bipartite: K must be positive");
  std::map<Vertex, std::size_t> left, right;
  std::set<VertexPair> seen;
  for (const auto& e : q) {
    if (!seen.insert(e).second) throw std::invalid_argument("extract_bounded_bipartite: repeated pair");
    left.emplace(e.first, left.size());
    right.emplace(e.second, right.size());
  }
  for (const auto& [v, _] : left) {
    if (right.count(v)) throw std::invalid_argument("extract_bounded_bipartite: q is not bipartite as oriented");
  }
  ExtractionReport r;
  const Rational T = exact_decimal(tau);
  const Rational ratio = T / exact_decimal(p);
  const auto cap_big = detail::ceil_of(ratio);
  r.cap = cap_big > q.size() ? q.size() : cap_big.convert_to<std::size_t>();
  const std::size_t source = left.size() + right.size();
  const std::size_t sink = source + 1;
  detail::MaxFlow flow(sink + 1);
  for (const auto& [v, i] : left) flow.add_arc(source, i, static_cast<std::int64_t>(r.cap));
  for (const auto& [v, i] : right) flow.add_arc(left.size() + i, sink, static_cast<std::int64_t>(r.cap));
  std::vector<std::size_t> arcs;
  arcs.reserve(q.size());
  for (const auto& e : q) arcs.push_back(flow.add_arc(left[e.first], left.size() + right[e.second], 1));
  r.flow_value = static_cast<std::size_t>(flow.run(source, sink));
  std::map<Vertex, std::size_t> degree;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (flow.flow(arcs[i]) == 1) {
      r.R.push_back(q[i]);
      r.max_degree = std::max({r.max_degree, ++degree[q[i].first], ++degree[q[i].second]});
    }
  }
  if (r.R.size() != r.flow_value || r.max_degree > r.cap) {
    throw std::logic_error("extract_bounded_bipartite: flow decomposition is inconsistent");
  }
  const std::size_t base = original_size.value_or(q.size());
  const Rational guarantee = T / (2 * exact_decimal(K)) * exact(base);
  r.guarantee = guarantee.convert_to<double>();
  r.meets_guarantee = exact(r.R.size()) >= guarantee;
  return r;
}

// ---------------------------------------------------------------------------

int MainChainReport::first_broken() const {
  for (int i = 0; i < 4; ++i)
    if (!links[i]) return i + 1;
  return 0;
}

MainChainReport verify_main_chain(const Graph& g, const ParamConfig& cfg, double p,
                                  const SolveLimits& limits) {
  cfg.validate();
  require_density(p);
  const std::size_t n = g.num_vertices();
  MainChainReport r;
  const auto bcert = max_cut(g, limits);
  r.b = bcert.optimum;
  const auto tcert = max_triangle_free(g, limits, bcert.partition);
  r.t = tcert.optimum;
  const EdgeSet& f0 = tcert.witness;

  Partition part;
  if (n <= 20) {
    SolveLimits exhaustive = limits;
    exhaustive.gray_code_vertices = std::max<std::size_t>(exhaustive.gray_code_vertices, 20);
    part = *max_cut(subgraph(g, f0), exhaustive).partition;
    r.cut_method = "exhaustive";
  } else {
    part = *bcert.partition;
    std::vector<std::vector<Vertex>> nbrs(n);
    for (EdgeId e : f0.ids()) {
      nbrs[g.edge(e).u].push_back(g.edge(e).v);
      nbrs[g.edge(e).v].push_back(g.edge(e).u);
    }
    for (bool moved = true; moved;) {
      moved = false;
      for (Vertex v = 0; v < n; ++v) {
        std::size_t same = 0;
        for (Vertex w : nbrs[v]) same += part.label[w] == part.label[v];
        if (2 * same > nbrs[v].size()) {
          part.label[v] ^= 1;
          moved = true;
        }
      }
    }
    r.cut_method = "hill-climb";
  }
  Cut pi = Cut::from_partition(part);
  auto count_f0 = [&](const Cut& c, std::size_t& in_a, std::size_t& in_b, std::size_t& across) {
    in_a = in_b = across = 0;
    for (EdgeId e : f0.ids()) {
      const int a = c.in_a(g.edge(e).u) + c.in_a(g.edge(e).v);
      (a == 2 ? in_a : a == 0 ? in_b : across)++;
    }
  };
  count_f0(pi, r.f0_in_a, r.f0_in_b, r.f0_across);
  if (r.f0_in_a < r.f0_in_b) {
    pi = pi.swapped();
    count_f0(pi, r.f0_in_a, r.f0_in_b, r.f0_across);
  }
  r.pi = pi;
  r.balanced = pi.balanced(cfg.eta);
  r.cut_size = cut_size(g, pi);

  const CutProfile prof = cut_profile(g, pi, cfg, p);
  EdgeSet f1 = f0;
  EdgeSet f = f0;
  for (EdgeId e : f0.ids()) {
    const Edge& ed = g.edge(e);
    if (pi.in_b(ed.u) && pi.in_b(ed.v)) {
      f1.erase(e);
      f.erase(e);
    } else if (pi.in_a(ed.u) && pi.in_a(ed.v) && prof.in_q(ed.u, ed.v)) {
      f.erase(e);
      ++r.f1_in_q;
    }
  }
  r.f1_size = f1.size();
  r.f_size = f.size();
  r.phi_f1 = phi(g, f1, pi);
  r.phi_f = phi(g, f, pi);
  r.links[0] = r.t <= r.phi_f1;
  r.links[1] = r.phi_f1 == r.phi_f + 2 * r.f1_in_q;
  r.links[2] = r.phi_f <= r.cut_size;
  r.links[3] = r.cut_size + 2 * r.f1_in_q <= r.b;
  r.dominance = check_cut_dominance(g, pi, f, cfg, p);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : seed_(seed) {}
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(keyed_hash(seed_, counter_++) % (hi - lo + 1));
  }
  /// First k entries of a fresh random permutation of 0..n-1.
  std::vector<Vertex> sample(std::size_t n, std::size_t k) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(perm[i], perm[between(i, n - 1)]);
    perm.resize(k);
    return perm;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::size_t edges_between(const Graph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
  std::vector<std::uint64_t> mask(g.words_per_row(), 0);
  for (Vertex v : t) mask[v >> 6] |= std::uint64_t{1} << (v & 63);
  std::size_t total = 0;
  for (Vertex v : s) total += g.degree_into(v, mask);
  return total;
}

std::size_t edges_inside(const Graph& g, const std::vector<Vertex>& s) {
  return edges_between(g, s, s) / 2;
}

bool within(std::size_t value, const Rational& centre, const Rational& eps) {
  const Rational v = exact(value);
  return v >= (1 - eps) * centre && v <= (1 + eps) * centre;
}

}  // namespace

ConcentrationReport concentration_diagnostics(const Graph& g, const ParamConfig& cfg, double p,
                                              const ConcentrationOptions& options) {
  cfg.validate();
  require_density(p);
  const std::size_t n = g.num_vertices();
  ConcentrationReport r;
  r.degrees = degree_codegree_stats(g, p, cfg.epsilon, cfg.epsilon);
  const double c = options.floor_constant.value_or(cfg.K);
  r.size_floor = p > 0 && n > 1 ? c / p * std::log(static_cast<double>(n))
                                : std::numeric_limits<double>::infinity();
  const Rational e = exact_decimal(cfg.epsilon);
  const Rational P = exact_decimal(p);
  const Rational K = exact_decimal(cfg.K);
  Draws draws(options.seed);

  // Large disjoint S, T at or above the size floor.
  const double floor_size = std::ceil(r.size_floor);
  const bool large_fit = std::isfinite(floor_size) && 2 * floor_size <= static_cast<double>(n);
  for (std::size_t i = 0; i < options.set_pairs; ++i) {
    if (!large_fit) {
      ++r.density_cut.skipped;
      ++r.density_inside.skipped;
      continue;
    }
    const auto f = std::max<std::size_t>(1, static_cast<std::size_t>(floor_size));
    const std::size_t s = draws.between(f, n - f);
    const std::size_t t = draws.between(f, n - s);
    const auto verts = draws.sample(n, s + t);
    const std::vector<Vertex> S(verts.begin(), verts.begin() + static_cast<std::ptrdiff_t>(s));
    const std::vector<Vertex> T(verts.begin() + static_cast<std::ptrdiff_t>(s), verts.end());
    ++r.density_cut.evaluated;
    if (!within(edges_between(g, S, T), exact(s) * exact(t) * P, e)) ++r.density_cut.violations;
    ++r.density_inside.evaluated;
    if (!within(edges_inside(g, S), exact(s * (s - 1) / 2) * P, e)) ++r.density_inside.violations;
  }

  // Small S against larger T, with kappa just above the floor.
  for (std::size_t i = 0; i < options.set_pairs; ++i) {
    if (!std::isfinite(r.size_floor) || n < 2) {
      ++r.sparse_cut.skipped;
      ++r.sparse_inside.skipped;
      continue;
    }
    const double kappa = std::floor(r.size_floor) + 1;
    const Rational kap = exact_decimal(kappa);
    const std::size_t s_max = static_cast<std::size_t>(std::min(kappa, static_cast<double>(n / 2)));
    const std::size_t s = draws.between(1, std::max<std::size_t>(1, s_max));
    const std::size_t t = draws.between(s, n - s);
    const auto verts = draws.sample(n, s + t);
    const std::vector<Vertex> S(verts.begin(), verts.begin() + static_cast<std::ptrdiff_t>(s));
    const std::vector<Vertex> T(verts.begin() + static_cast<std::ptrdiff_t>(s), verts.end());
    ++r.sparse_cut.evaluated;
    if (exact(edges_between(g, S, T)) > 2 * exact(t) * kap * P) ++r.sparse_cut.violations;
    ++r.sparse_inside.evaluated;
    if (exact(edges_inside(g, S)) > exact(s) * kap * P) ++r.sparse_inside.violations;
  }

  // Random cuts with |A| as close to n/2 as balance allows.
  std::size_t a_size = n / 2;
  for (std::size_t cand : {n / 2, (n + 1) / 2}) {
    std::vector<Vertex> a(cand);
    std::iota(a.begin(), a.end(), 0);
    if (Cut::from_a(n, a).balanced(cfg.eta)) {
      a_size = cand;
      r.balanced_cuts_exist = true;
      break;
    }
  }
  for (std::size_t i = 0; i < options.cuts; ++i) {
    const auto a = draws.sample(n, a_size);
    const Cut pi = Cut::from_a(n, a);
    const CutProfile prof = cut_profile(g, pi, cfg, p);
    if (r.balanced_cuts_exist) {
      ++r.low_set.evaluated;
      if (!(exact(prof.T.size()) * P < K)) ++r.low_set.violations;
    } else {
      ++r.low_set.skipped;
    }
    std::vector<std::size_t> d_qe(n, 0);
    for (const auto& q : prof.Q_e) {
      ++d_qe[q.first];
      ++d_qe[q.second];
    }
    std::vector<std::uint8_t> in_x(n, 0);
    for (Vertex x : prof.X) in_x[x] = 1;
    for (Vertex x : prof.A) {
      if (in_x[x]) continue;
      ++r.low_pair_degree.evaluated;
      if (!(exact(d_qe[x]) * P < K)) ++r.low_pair_degree.violations;
    }
  }
  return r;
}

}  // namespace mantel
