// Dinic's algorithm on integer capacities.
#ifndef MANTEL_SRC_MAX_FLOW_HPP
#define MANTEL_SRC_MAX_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace mantel::detail {

class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  /// Returns the arc id; flow(id) reads it back after run().
  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<std::int64_t>(id);
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<std::int64_t>(id + 1);
    capacity_.push_back(cap);
    return id;
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      for (std::size_t v = 0; v < head_.size(); ++v) cursor_[v] = head_[v];
      while (const std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

  std::int64_t flow(std::size_t arc) const { return capacity_[arc / 2] - arcs_[arc].cap; }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t next;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::int64_t a = head_[v]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[v] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t limit) {
    if (v == t) return limit;
    for (std::int64_t& a = cursor_[v]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (const std::int64_t f = dfs(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= f;
        arcs_[static_cast<std::size_t>(a) ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::int64_t> capacity_;
  std::vector<std::int64_t> head_;
  std::vector<int> level_;
  std::vector<std::int64_t> cursor_;
};

}  // namespace mantel::detail

#endif  // MANTEL_SRC_MAX_FLOW_HPP
