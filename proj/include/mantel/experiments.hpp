#ifndef MANTEL_EXPERIMENTS_HPP
#define MANTEL_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mantel/graph.hpp"
#include "mantel/solvers.hpp"
#include "mantel/stats.hpp"

namespace mantel {

/// Odd cycle made of edges that lie in no triangle. Its presence forces
/// t(G) > b(G): every cut misses one of its edges, and that edge can be added
/// back without closing a triangle.
struct Obstruction {
  std::vector<Vertex> cycle;  // v0, v1, ..., vk; the edge vk v0 closes it
  EdgeSet edges;
};

std::optional<Obstruction> obstruction_witness(const Graph& g);

enum class EventMode { kWeak, kStrong };

const char* to_string(EventMode m);

/// Outcome of one sampled graph.
enum class Outcome : std::uint8_t { kYes, kNo, kUnknown, kSkipped };

struct TrialResult {
  std::uint64_t seed = 0;
  bool obstruction = false;
  Outcome weak = Outcome::kSkipped;
  Outcome strong = Outcome::kSkipped;
  std::uint64_t work = 0;
};

struct ExperimentConfig {
  /// Per-trial limits. node_budget applies to each solver stage separately;
  /// a stage that runs out makes the trial inconclusive.
  SolveLimits limits;
  std::size_t weak_vertices = 40;
  std::size_t strong_vertices = 30;
  /// Workers; 0 defers to resolve_threads().
  unsigned threads = 0;
};

/// Aggregate over the trials at one density. Rates are taken over decided
/// trials: inconclusive ones count neither as success nor as failure.
struct SweepRecord {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t trials = 0;
  EventMode mode = EventMode::kWeak;
  std::size_t weak_success = 0;
  std::size_t weak_inconclusive = 0;
  std::size_t strong_success = 0;
  std::size_t strong_inconclusive = 0;  // includes weak-inconclusive trials
  std::size_t obstructions = 0;
  Interval weak_ci;
  Interval strong_ci;  // only meaningful in strong mode
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;

  std::size_t weak_decided() const { return trials - weak_inconclusive; }
  std::size_t strong_decided() const { return trials - strong_inconclusive; }
  double weak_rate() const;
  double strong_rate() const;
  /// The inconclusive count of the requested mode.
  std::size_t inconclusive() const {
    return mode == EventMode::kStrong ? strong_inconclusive : weak_inconclusive;
  }
};

/// One trial: seed derive_seed(master, index). Exposed for tests.
TrialResult run_trial(std::size_t n, double p, std::uint64_t master,
                      std::uint64_t index, EventMode mode,
                      const SolveLimits& limits);

/// Monte Carlo estimate of Pr(t = b) (weak) and of "all maximum
/// triangle-free subgraphs are bipartite" (strong). Throws InstanceTooLarge
/// when n exceeds the envelope of the requested mode.
SweepRecord estimate_f(std::size_t n, double p, std::size_t trials,
                       std::uint64_t seed, EventMode mode,
                       const ExperimentConfig& cfg = {});

/// sqrt(log n / n), the density scale of the threshold.
double threshold_scale(std::size_t n);

/// `points` values from lo to hi in geometric progression (lo > 0).
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

/// Grid over [1/n, 1] containing 1/n, 0.1·s(n), C·s(n) (if below 1) and 1,
/// the remaining points spread geometrically. points >= 4.
std::vector<double> auto_grid(std::size_t n, std::size_t points = 10, double c = 1.0);

std::vector<SweepRecord> sweep(std::size_t n, const std::vector<double>& grid,
                               std::size_t trials, std::uint64_t seed,
                               EventMode mode, const ExperimentConfig& cfg = {});

/// CSV with header n,p,trials,weak_count,weak_lo,weak_hi,strong_count,
/// strong_lo,strong_hi,inconclusive,obstructions,seed. Reals in fixed
/// notation with six decimals.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
std::string sweep_csv(const std::vector<SweepRecord>& records);

struct CrossingResult {
  bool found = false;
  /// True when the rate already reaches `level` at the lower end.
  bool at_lower_end = false;
  double p_star = 0.0;
  double ratio = 0.0;  // p_star / threshold_scale(n)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<SweepRecord> evaluations;
};

/// Geometric bisection for the density where the weak rate rises through
/// `level`, over [0.1·s(n), 1].
CrossingResult threshold_crossing(std::size_t n, std::size_t trials,
                                  std::uint64_t seed, double level = 0.5,
                                  std::size_t iterations = 8,
                                  const ExperimentConfig& cfg = {});

}  // namespace mantel

#endif  // MANTEL_EXPERIMENTS_HPP
