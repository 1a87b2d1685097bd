#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/point_measure.hpp"

namespace graphlim {

struct CouplingEntry {
  std::size_t from;  // atom index in the first measure (original order)
  std::size_t to;    // atom index in the second measure
  double mass;
};

using CouplingPlan = std::vector<CouplingEntry>;

namespace detail {

inline void check_equal_mass(const PointMeasure& mu, const PointMeasure& nu) {
  const double a = mu.total_mass();
  const double b = nu.total_mass();
  if (std::fabs(a - b) > 1e-9) {
    throw std::invalid_argument("wasserstein_1d: total masses differ (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
  if (a <= 0.0) throw std::invalid_argument("wasserstein_1d: measures must have positive mass");
}

}  // namespace detail

// Exact 1-Wasserstein distance between two atomic measures on the line with
// equal total mass, by the monotone (quantile) coupling: sort both sides and
// sweep, always transporting between the current lowest unmet quantiles.
// Optionally fills the optimal plan.
inline double wasserstein_1d(const PointMeasure& mu, const PointMeasure& nu,
                             CouplingPlan* plan = nullptr) {
  detail::check_equal_mass(mu, nu);

  // Fast path: equal atom counts with uniform masses on both sides reduce to
  // the mean absolute difference of sorted values.
  if (plan == nullptr && mu.size() == nu.size() && !mu.atoms.empty()) {
    const double m0 = mu.atoms[0].mass;
    bool uniform = m0 > 0.0;
    for (const auto& a : mu.atoms) uniform &= (a.mass == m0);
    for (const auto& a : nu.atoms) uniform &= (a.mass == m0);
    if (uniform) {
      std::vector<double> x = mu.sorted_values();
      std::vector<double> y = nu.sorted_values();
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - y[i]);
      return s * m0;
    }
  }

  std::vector<std::size_t> ox(mu.size()), oy(nu.size());
  std::iota(ox.begin(), ox.end(), 0);
  std::iota(oy.begin(), oy.end(), 0);
  std::sort(ox.begin(), ox.end(), [&](std::size_t a, std::size_t b) {
    return mu.atoms[a].value < mu.atoms[b].value;
  });
  std::sort(oy.begin(), oy.end(), [&](std::size_t a, std::size_t b) {
    return nu.atoms[a].value < nu.atoms[b].value;
  });

  double cost = 0.0;
  std::size_t i = 0, j = 0;
  double rem_i = mu.atoms.empty() ? 0.0 : mu.atoms[ox[0]].mass;
  double rem_j = nu.atoms.empty() ? 0.0 : nu.atoms[oy[0]].mass;
  while (i < ox.size() && j < oy.size()) {
    if (rem_i == 0.0) {
      if (++i == ox.size()) break;
      rem_i = mu.atoms[ox[i]].mass;
      continue;
    }
    if (rem_j == 0.0) {
      if (++j == oy.size()) break;
      rem_j = nu.atoms[oy[j]].mass;
      continue;
    }
    const double moved = std::min(rem_i, rem_j);
    cost += moved * std::fabs(mu.atoms[ox[i]].value - nu.atoms[oy[j]].value);
    if (plan && moved > 0.0) plan->push_back({ox[i], oy[j], moved});
    rem_i -= moved;
    rem_j -= moved;
  }
  return cost;
}

// Exact distance between an atomic probability measure on [0, 1] and the
// uniform distribution: the integral of |F_n(x) - x| evaluated in closed
// form on each interval where F_n is constant.
inline double wasserstein_1d_vs_uniform(const PointMeasure& mu) {
  if (mu.atoms.empty()) throw std::invalid_argument("wasserstein_1d_vs_uniform: empty measure");
  if (std::fabs(mu.total_mass() - 1.0) > 1e-9) {
    throw std::invalid_argument("wasserstein_1d_vs_uniform: measure must have total mass 1");
  }
  for (const auto& a : mu.atoms) {
    if (a.value < 0.0 || a.value > 1.0) {
      throw std::domain_error("wasserstein_1d_vs_uniform: atom at " + std::to_string(a.value) +
                              " outside [0, 1]");
    }
  }
  PointMeasure s = mu.merged();
  double total = 0.0;
  double cdf = 0.0;
  double x_prev = 0.0;
  // Integral of |c - x| over [a, b].
  const auto segment = [](double c, double a, double b) {
    if (c <= a) return (b - c) * (b - c) / 2.0 - (a - c) * (a - c) / 2.0;
    if (c >= b) return (c - a) * (c - a) / 2.0 - (c - b) * (c - b) / 2.0;
    return (c - a) * (c - a) / 2.0 + (b - c) * (b - c) / 2.0;
  };
  for (const auto& atom : s.atoms) {
    if (atom.value > x_prev) {
      total += segment(cdf, x_prev, atom.value);
      x_prev = atom.value;
    }
    cdf += atom.mass;
  }
  if (x_prev < 1.0) total += segment(cdf, x_prev, 1.0);
  return total;
}

struct AssignmentResult {
  std::vector<int> assignment;  // assignment[row] = column
  double cost = 0.0;
};

// Exact minimum-cost perfect assignment on a square cost matrix, by the
// shortest augmenting path method with dual potentials, O(n^3).
inline AssignmentResult assignment_solve(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) throw std::invalid_argument("assignment_solve: empty cost matrix");
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("assignment_solve: cost matrix must be square");
    }
    for (double c : row) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("assignment_solve: cost entries must be finite");
      }
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, n);  // match[col] = row, n when free
  std::vector<int> way(n + 1, 0);
  for (int row = 0; row < n; ++row) {
    match[n] = row;
    int j0 = n;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = n;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != n);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != n);
  }
  AssignmentResult result;
  result.assignment.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    if (match[j] < n) result.assignment[match[j]] = j;
  }
  for (int i = 0; i < n; ++i) result.cost += cost[i][result.assignment[i]];
  return result;
}

// Wasserstein distance between two ensembles of measures where the ground
// metric is 1-Wasserstein on the line: the minimum over pairings of the mean
// pairwise distance, solved exactly as an assignment problem. Ensembles of
// different sizes are replicated up to lcm(n1, n2) members first, which
// realizes the optimal coupling of the two uniform ensemble measures.
inline double nested_wasserstein(const MeasureEnsemble& e1, const MeasureEnsemble& e2) {
  if (e1.empty() || e2.empty()) {
    throw std::invalid_argument("nested_wasserstein: ensembles must be nonempty");
  }
  const std::int64_t n1 = static_cast<std::int64_t>(e1.size());
  const std::int64_t n2 = static_cast<std::int64_t>(e2.size());
  const std::int64_t l = std::lcm(n1, n2);
  if (l > 10000) {
    throw std::length_error("nested_wasserstein: lcm of ensemble sizes is " + std::to_string(l) +
                            "; replication is capped at 10000 members");
  }
  const int n = static_cast<int>(l);
  const int r1 = static_cast<int>(l / n1);
  const int r2 = static_cast<int>(l / n2);
  // Pairwise ground distances are computed once on the original members.
  std::vector<std::vector<double>> base(e1.size(), std::vector<double>(e2.size(), 0.0));
  for (std::size_t a = 0; a < e1.size(); ++a) {
    for (std::size_t b = 0; b < e2.size(); ++b) base[a][b] = wasserstein_1d(e1[a], e2[b]);
  }
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cost[i][j] = base[i / r1][j / r2];
  }
  const AssignmentResult result = assignment_solve(cost);
  return result.cost / static_cast<double>(n);
}

}  // namespace graphlim
