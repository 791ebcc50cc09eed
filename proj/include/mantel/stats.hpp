#ifndef MANTEL_STATS_HPP
#define MANTEL_STATS_HPP

#include <cstddef>

namespace mantel {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval; z = 1.96 gives 95%. With no trials it is [0, 1].
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.959963984540054);

/// Worker count: `requested` if positive, else MANTEL_THREADS if set to a
/// positive integer, else the hardware concurrency. Never affects results.
unsigned resolve_threads(unsigned requested = 0);

}  // namespace mantel

#endif  // MANTEL_STATS_HPP
