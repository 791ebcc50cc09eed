#include "mantel/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mantel/random.hpp"
#include "parallel.hpp"

namespace mantel {

std::optional<Obstruction> obstruction_witness(const Graph& g) {
  const EdgeSet lone = edges_in_no_triangle(g);
  auto cycle = find_odd_cycle(g, lone);
  if (cycle.empty()) return std::nullopt;
  Obstruction ob{std::move(cycle), EdgeSet(g.num_edges())};
  for (std::size_t i = 0; i < ob.cycle.size(); ++i) {
    const Vertex u = ob.cycle[i];
    const Vertex v = ob.cycle[(i + 1) % ob.cycle.size()];
    ob.edges.insert(g.edge_id(u, v));
  }
  return ob;
}

const char* to_string(EventMode m) {
  return m == EventMode::kStrong ? "strong" : "weak";
}

double SweepRecord::weak_rate() const {
  return weak_decided() == 0 ? 0.0
                             : static_cast<double>(weak_success) / static_cast<double>(weak_decided());
}

double SweepRecord::strong_rate() const {
  return strong_decided() == 0
             ? 0.0
             : static_cast<double>(strong_success) / static_cast<double>(strong_decided());
}

TrialResult run_trial(std::size_t n, double p, std::uint64_t master,
                      std::uint64_t index, EventMode mode,
                      const SolveLimits& limits) {
  TrialResult r;
  r.seed = derive_seed(master, index);
  const Graph g = sample_gnp({n, p, r.seed});
  if (obstruction_witness(g)) {
    r.obstruction = true;
    r.weak = Outcome::kNo;
    if (mode == EventMode::kStrong) r.strong = Outcome::kNo;
    return r;
  }
  EqualityDecision weak;
  try {
    weak = decide_t_equals_b(g, limits);
  } catch (const InstanceTooLarge&) {
    r.weak = Outcome::kUnknown;
    if (mode == EventMode::kStrong) r.strong = Outcome::kUnknown;
    r.work = limits.node_budget;
    return r;
  }
  r.work = weak.nodes_explored;
  r.weak = weak.equal ? Outcome::kYes : Outcome::kNo;
  if (mode == EventMode::kWeak) return r;
  if (!weak.equal) {
    // t > b: a maximum triangle-free subgraph beats every bipartite one.
    r.strong = Outcome::kNo;
    return r;
  }
  const auto cert = all_max_triangle_free_bipartite(g, weak, limits);
  r.work = cert.nodes_explored;
  switch (cert.verdict) {
    case Verdict::kAllBipartite: r.strong = Outcome::kYes; break;
    case Verdict::kNonBipartiteOptimumFound: r.strong = Outcome::kNo; break;
    default: r.strong = Outcome::kUnknown; break;
  }
  return r;
}

namespace {

void check_envelope(std::size_t n, EventMode mode, const ExperimentConfig& cfg) {
  const std::size_t cap = mode == EventMode::kStrong ? cfg.strong_vertices : cfg.weak_vertices;
  if (n > cap) {
    throw InstanceTooLarge(std::string("estimate_f: n = ") + std::to_string(n) +
                           " exceeds the " + to_string(mode) + "-mode envelope " +
                           std::to_string(cap));
  }
}

}  // namespace

SweepRecord estimate_f(std::size_t n, double p, std::size_t trials,
                       std::uint64_t seed, EventMode mode,
                       const ExperimentConfig& cfg) {
  if (trials == 0) throw std::invalid_argument("estimate_f: trials must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("estimate_f: p outside [0, 1]");
  check_envelope(n, mode, cfg);
  const auto start = std::chrono::steady_clock::now();
  SweepRecord rec;
  rec.n = n;
  rec.p = p;
  rec.trials = trials;
  rec.mode = mode;
  rec.seed = seed;
  const auto results = detail::parallel_map<TrialResult>(
      trials, resolve_threads(cfg.threads),
      [&](std::size_t i) { return run_trial(n, p, seed, i, mode, cfg.limits); });
  for (const auto& t : results) {
    rec.obstructions += t.obstruction;
    rec.weak_success += t.weak == Outcome::kYes;
    rec.weak_inconclusive += t.weak == Outcome::kUnknown;
    if (mode == EventMode::kStrong) {
      rec.strong_success += t.strong == Outcome::kYes;
      rec.strong_inconclusive += t.strong == Outcome::kUnknown;
    }
  }
  rec.weak_ci = wilson_interval(rec.weak_success, rec.weak_decided());
  if (mode == EventMode::kStrong) {
    rec.strong_ci = wilson_interval(rec.strong_success, rec.strong_decided());
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

double threshold_scale(std::size_t n) {
  const double x = static_cast<double>(n);
  return std::sqrt(std::log(x) / x);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || points == 0) {
    throw std::invalid_argument("geometric_grid: need 0 < lo <= hi and points > 0");
  }
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

std::vector<double> auto_grid(std::size_t n, std::size_t points, double c) {
  if (n < 2) throw std::invalid_argument("auto_grid: n must be at least 2");
  if (points < 4) throw std::invalid_argument("auto_grid: need at least 4 points");
  const double s = threshold_scale(n);
  std::vector<double> anchors{1.0 / static_cast<double>(n), 0.1 * s};
  if (c * s < 1.0) anchors.push_back(c * s);
  anchors.push_back(1.0);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  // Fill the largest log-gaps between neighbouring grid points one at a time.
  std::vector<double> grid = anchors;
  while (grid.size() < points) {
    std::size_t widest = 0;
    double gap = -1.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double d = std::log(grid[i + 1] / grid[i]);
      if (d > gap) {
        gap = d;
        widest = i;
      }
    }
    grid.insert(grid.begin() + static_cast<std::ptrdiff_t>(widest) + 1,
                std::sqrt(grid[widest] * grid[widest + 1]));
  }
  return grid;
}

std::vector<SweepRecord> sweep(std::size_t n, const std::vector<double>& grid,
                               std::size_t trials, std::uint64_t seed,
                               EventMode mode, const ExperimentConfig& cfg) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepRecord> out;
  out.reserve(grid.size());
  for (double p : grid) out.push_back(estimate_f(n, p, trials, seed, mode, cfg));
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << "n,p,trials,weak_count,weak_lo,weak_hi,strong_count,strong_lo,strong_hi,"
         "inconclusive,obstructions,seed\n";
  std::ostringstream line;
  line << std::fixed << std::setprecision(6);
  for (const auto& r : records) {
    line.str("");
    const bool strong = r.mode == EventMode::kStrong;
    line << r.n << ',' << r.p << ',' << r.trials << ',' << r.weak_success << ','
         << r.weak_ci.lo << ',' << r.weak_ci.hi << ',';
    if (strong) {
      line << r.strong_success << ',' << r.strong_ci.lo << ',' << r.strong_ci.hi << ',';
    } else {
      line << ",,,";
    }
    line << r.inconclusive() << ',' << r.obstructions << ',' << r.seed << '\n';
    out << line.str();
  }
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  write_sweep_csv(os, records);
  return os.str();
}

CrossingResult threshold_crossing(std::size_t n, std::size_t trials,
                                  std::uint64_t seed, double level,
                                  std::size_t iterations,
                                  const ExperimentConfig& cfg) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("threshold_crossing: level must lie in (0, 1)");
  }
  CrossingResult res;
  const double s = threshold_scale(n);
  double lo = std::min(1.0, 0.1 * s);
  double hi = 1.0;
  auto rate_at = [&](double p) {
    res.evaluations.push_back(estimate_f(n, p, trials, seed, EventMode::kWeak, cfg));
    return res.evaluations.back().weak_rate();
  };
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  if (rate_at(lo) >= level) {
    res.found = true;
    res.at_lower_end = true;
    res.p_star = lo;
    res.ratio = lo / s;
    return res;
  }
  if (rate_at(hi) < level) return res;
  for (std::size_t it = 0; it < iterations; ++it) {
    const double mid = std::sqrt(lo * hi);
    (rate_at(mid) >= level ? hi : lo) = mid;
  }
  res.found = true;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.p_star = std::sqrt(lo * hi);
  res.ratio = res.p_star / s;
  return res;
}

}  // namespace mantel
