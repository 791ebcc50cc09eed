#include "covering_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mantel/random.hpp"

namespace mantel::detail {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kPivotTol = 1e-7;
constexpr double kDualTol = 1e-9;

}  // namespace

CoveringLp::CoveringLp(std::size_t variables)
    : n_(variables), cost_(variables), lo_(variables, 0.0), up_(variables, 1.0),
      at_upper_(variables, 0), where_(variables), column_(variables),
      reduced_(variables), x_(variables, 0.0) {
  // Tiny deterministic cost perturbation against dual degeneracy. The bound
  // in evaluate() uses unit costs, so this never affects validity.
  for (std::size_t j = 0; j < n_; ++j) {
    cost_[j] = 1.0 + 1e-5 * static_cast<double>(keyed_hash(0x9e37, j) % 1024) / 1024.0;
  }
  reset();
}

void CoveringLp::reset() {
  const std::size_t m = rows_.size();
  where_.resize(n_ + m);
  at_upper_.resize(n_ + m);
  for (std::size_t j = 0; j < n_; ++j) {
    where_[j] = -static_cast<std::int64_t>(j) - 1;
    column_[j] = static_cast<std::uint32_t>(j);
    reduced_[j] = cost_[j];
    at_upper_[j] = 0;
  }
  tableau_.assign(m * n_, 0.0);
  basic_.resize(m);
  beta_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    basic_[i] = static_cast<std::uint32_t>(n_ + i);
    where_[n_ + i] = static_cast<std::int64_t>(i);
    at_upper_[n_ + i] = 0;
    double sum = -rhs_[i];
    for (std::uint32_t j : rows_[i]) {
      tableau_[i * n_ + j] = -1.0;
      sum += nonbasic_value(j);
    }
    beta_[i] = sum;
  }
  pivots_since_check_ = 0;
}

void CoveringLp::add_row(std::span<const std::uint32_t> vars, double rhs) {
  const std::size_t i = rows_.size();
  rows_.emplace_back(vars.begin(), vars.end());
  rhs_.push_back(rhs);
  lo_.push_back(0.0);
  up_.push_back(kInf);
  cost_.push_back(0.0);
  where_.push_back(static_cast<std::int64_t>(i));
  at_upper_.push_back(0);
  basic_.push_back(static_cast<std::uint32_t>(n_ + i));
  tableau_.resize((i + 1) * n_, 0.0);
  double* row = &tableau_[i * n_];
  double value = -rhs;
  for (std::uint32_t j : vars) {
    if (is_basic(j)) {
      const std::size_t rho = static_cast<std::size_t>(where_[j]);
      const double* src = &tableau_[rho * n_];
      for (std::size_t k = 0; k < n_; ++k) row[k] += src[k];
      value += beta_[rho];
    } else {
      row[static_cast<std::size_t>(-where_[j] - 1)] -= 1.0;
      value += nonbasic_value(j);
    }
  }
  beta_.push_back(value);
}

std::size_t CoveringLp::drop_slack_rows() {
  const std::size_t m = rows_.size();
  std::vector<std::int64_t> renamed(n_ + m);
  std::iota(renamed.begin(), renamed.begin() + static_cast<std::ptrdiff_t>(n_), 0);
  std::vector<std::uint8_t> drop_tableau_row(m, 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t s = n_ + i;
    if (is_basic(s) && beta_[static_cast<std::size_t>(where_[s])] > 1e-6) {
      renamed[s] = -1;
      drop_tableau_row[static_cast<std::size_t>(where_[s])] = 1;
    } else {
      renamed[s] = static_cast<std::int64_t>(n_ + next);
      if (next != i) {
        rows_[next] = std::move(rows_[i]);
        rhs_[next] = rhs_[i];
      }
      ++next;
    }
  }
  if (next == m) return 0;
  rows_.resize(next);
  rhs_.resize(next);

  std::size_t out = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (drop_tableau_row[r]) continue;
    if (out != r) {
      std::copy_n(&tableau_[r * n_], n_, &tableau_[out * n_]);
      beta_[out] = beta_[r];
      basic_[out] = basic_[r];
    }
    ++out;
  }
  tableau_.resize(out * n_);
  beta_.resize(out);
  basic_.resize(out);
  for (auto& v : basic_) v = static_cast<std::uint32_t>(renamed[v]);
  for (auto& v : column_) v = static_cast<std::uint32_t>(renamed[v]);

  std::vector<double> lo(n_ + next), up(n_ + next), cost(n_ + next);
  std::vector<std::uint8_t> at_upper(n_ + next);
  std::vector<std::int64_t> where(n_ + next);
  for (std::size_t v = 0; v < n_ + m; ++v) {
    if (renamed[v] < 0) continue;
    const auto w = static_cast<std::size_t>(renamed[v]);
    lo[w] = lo_[v];
    up[w] = up_[v];
    cost[w] = cost_[v];
    at_upper[w] = at_upper_[v];
  }
  for (std::size_t r = 0; r < basic_.size(); ++r) where[basic_[r]] = static_cast<std::int64_t>(r);
  for (std::size_t k = 0; k < n_; ++k) where[column_[k]] = -static_cast<std::int64_t>(k) - 1;
  lo_ = std::move(lo);
  up_ = std::move(up);
  cost_ = std::move(cost);
  at_upper_ = std::move(at_upper);
  where_ = std::move(where);
  return m - next;
}

void CoveringLp::set_bounds(std::uint32_t j, std::uint8_t lo, std::uint8_t up) {
  if (lo_[j] == lo && up_[j] == up) return;
  if (is_basic(j)) {
    lo_[j] = lo;
    up_[j] = up;
    return;
  }
  const double before = nonbasic_value(j);
  const std::size_t k = static_cast<std::size_t>(-where_[j] - 1);
  lo_[j] = lo;
  up_[j] = up;
  if (reduced_[k] > 0) at_upper_[j] = 0;
  if (reduced_[k] < 0) at_upper_[j] = 1;
  const double delta = nonbasic_value(j) - before;
  if (delta != 0.0) {
    for (std::size_t i = 0; i < rows_.size(); ++i) beta_[i] -= tableau_[i * n_ + k] * delta;
  }
}

void CoveringLp::pivot(std::size_t r, std::size_t q) {
  const std::size_t m = rows_.size();
  const std::uint32_t leave = basic_[r];
  const std::uint32_t enter = column_[q];
  double* prow = &tableau_[r * n_];
  const double piv = prow[q];
  const bool below = beta_[r] < lo_[leave];
  const double target = below ? lo_[leave] : up_[leave];
  const double theta = (beta_[r] - target) / piv;
  for (std::size_t i = 0; i < m; ++i) beta_[i] -= tableau_[i * n_ + q] * theta;
  beta_[r] = nonbasic_value(enter) + theta;

  const double t = reduced_[q] / piv;
  for (std::size_t k = 0; k < n_; ++k) reduced_[k] -= t * prow[k];
  reduced_[q] = -t;

  const double inv = 1.0 / piv;
  for (std::size_t k = 0; k < n_; ++k) prow[k] *= inv;
  prow[q] = inv;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == r) continue;
    double* row = &tableau_[i * n_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (std::size_t k = 0; k < n_; ++k) row[k] -= f * prow[k];
    row[q] = -f * inv;
  }

  basic_[r] = enter;
  where_[enter] = static_cast<std::int64_t>(r);
  column_[q] = leave;
  where_[leave] = -static_cast<std::int64_t>(q) - 1;
  at_upper_[leave] = below ? 0 : 1;
  ++pivots_since_check_;
}

void CoveringLp::refresh_values() {
  for (std::size_t j = 0; j < n_; ++j) {
    const double v = is_basic(j) ? beta_[static_cast<std::size_t>(where_[j])] : nonbasic_value(j);
    x_[j] = std::clamp(v, lo_[j], up_[j]);
  }
}

bool CoveringLp::drifted() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double sum = -rhs_[i];
    for (std::uint32_t j : rows_[i]) {
      sum += is_basic(j) ? beta_[static_cast<std::size_t>(where_[j])] : nonbasic_value(j);
    }
    const std::size_t s = n_ + i;
    const double surplus = is_basic(s) ? beta_[static_cast<std::size_t>(where_[s])] : 0.0;
    if (std::abs(sum - surplus) > 1e-6) return true;
  }
  return false;
}

CoveringLp::Result CoveringLp::evaluate(bool optimal) {
  Result res;
  res.optimal = optimal;
  std::vector<double> slack(n_, 1.0);
  double bound = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t s = n_ + i;
    if (is_basic(s)) continue;
    const double y = reduced_[static_cast<std::size_t>(-where_[s] - 1)];
    if (y <= 0.0) continue;
    bound += y * rhs_[i];
    for (std::uint32_t j : rows_[i]) slack[j] -= y;
  }
  for (std::size_t j = 0; j < n_; ++j) bound += slack[j] * (slack[j] >= 0 ? lo_[j] : up_[j]);
  res.bound = bound;
  refresh_values();
  return res;
}

CoveringLp::Result CoveringLp::solve(std::size_t max_pivots, double cutoff) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double reach = 0.0;
    for (std::uint32_t j : rows_[i]) reach += up_[j];
    if (reach < rhs_[i] - 1e-9) {
      Result res;
      res.infeasible = true;
      return res;
    }
  }
  const std::size_t m = rows_.size();
  bool restarted = false;
  for (std::size_t it = 0; it < max_pivots; ++it) {
    if (it % 32 == 31 && cutoff < kInf) {
      auto res = evaluate(false);
      if (res.bound >= cutoff) {
        res.pivots = it;
        return res;
      }
    }
    if (pivots_since_check_ >= 256) {
      pivots_since_check_ = 0;
      if (drifted()) reset();
    }
    std::size_t r = m;
    double worst = kPrimalTol;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint32_t v = basic_[i];
      const double viol = std::max(lo_[v] - beta_[i], beta_[i] - up_[v]);
      if (viol > worst) {
        worst = viol;
        r = i;
      }
    }
    if (r == m) {
      auto res = evaluate(true);
      res.pivots = it;
      return res;
    }

    const bool below = beta_[r] < lo_[basic_[r]];
    const double* prow = &tableau_[r * n_];
    auto eligible = [&](std::size_t k) {
      const std::uint32_t v = column_[k];
      if (lo_[v] == up_[v]) return false;
      const double a = prow[k];
      if (below) return at_upper_[v] ? a > kPivotTol : a < -kPivotTol;
      return at_upper_[v] ? a < -kPivotTol : a > kPivotTol;
    };
    // Harris ratio test: relaxed minimum first, then the largest pivot
    // among columns within it.
    double limit = kInf;
    for (std::size_t k = 0; k < n_; ++k) {
      if (!eligible(k)) continue;
      limit = std::min(limit, (std::abs(reduced_[k]) + kDualTol) / std::abs(prow[k]));
    }
    if (limit == kInf) {
      if (restarted) {
        auto res = evaluate(false);
        res.pivots = it;
        return res;
      }
      restarted = true;
      reset();
      continue;
    }
    std::size_t q = n_;
    double best_pivot = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (!eligible(k)) continue;
      const double a = std::abs(prow[k]);
      if (std::abs(reduced_[k]) / a <= limit && a > best_pivot) {
        best_pivot = a;
        q = k;
      }
    }
    pivot(r, q);
  }
  auto res = evaluate(false);
  res.pivots = max_pivots;
  return res;
}

}  // namespace mantel::detail
