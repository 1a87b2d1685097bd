#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/motif.hpp"
#include "graphlim/point_measure.hpp"
#include "graphlim/step_graphon.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

namespace detail {

// Shared core: homomorphism density of F into a symmetric s x s kernel with
// the uniform node measure,
//
//   t(F, K) = s^{-v} * sum over maps [v] -> [s] of prod_{ab in E} K(phi(a), phi(b)).
//
// For a graph K is the weight matrix (zero diagonal included, so degenerate
// maps contribute zero weight exactly as the definition requires); for a
// step graphon K is the block value matrix.

inline double hom_density_kernel_naive(const Motif& f, const double* kernel, int s,
                                       double cost_cap = 1e8) {
  const double cost = std::pow(static_cast<double>(s), f.v);
  if (cost > cost_cap) {
    throw std::length_error("hom density: " + std::to_string(s) + "^" + std::to_string(f.v) +
                            " assignments exceeds the enumeration budget; "
                            "use the elimination-based evaluator");
  }
  std::vector<int> phi(f.v, 0);
  double total = 0.0;
  for (;;) {
    double prod = 1.0;
    for (const auto& [a, b] : f.edges) {
      prod *= kernel[static_cast<std::size_t>(phi[a]) * s + phi[b]];
      if (prod == 0.0) break;
    }
    total += prod;
    int pos = f.v - 1;
    while (pos >= 0 && ++phi[pos] == s) phi[pos--] = 0;
    if (pos < 0) break;
  }
  return total / cost;
}

// Factor of a tensor-contraction view of the homomorphism sum. Initially one
// factor per motif edge (a copy of the kernel); eliminating a motif vertex
// multiplies the factors that mention it and sums that vertex out.
struct HomFactor {
  std::vector<int> vars;  // motif vertices, ascending
  std::vector<double> table;  // dense, mixed-radix over vars (last var fastest)
};

inline double eliminate_all(std::vector<HomFactor> factors, int v, int s, double cost_cap) {
  std::vector<char> alive(v, 1);

  // Cost of eliminating u = s^(size of the union scope of factors touching u).
  // Dry-run the whole elimination with a greedy min-cost order before
  // touching any data, so oversized requests fail fast and completely.
  auto union_scope = [&](const std::vector<std::vector<int>>& scopes, int u) {
    std::vector<int> merged;
    for (const auto& sc : scopes) {
      if (std::find(sc.begin(), sc.end(), u) == sc.end()) continue;
      std::vector<int> next;
      std::set_union(merged.begin(), merged.end(), sc.begin(), sc.end(), std::back_inserter(next));
      merged = std::move(next);
    }
    return merged;
  };

  std::vector<std::vector<int>> scopes;
  scopes.reserve(factors.size());
  for (const auto& f : factors) scopes.push_back(f.vars);
  {
    std::vector<char> left(v, 1);
    double total_cost = 0.0;
    std::vector<std::vector<int>> sim = scopes;
    for (int round = 0; round < v; ++round) {
      int best = -1;
      std::vector<int> best_scope;
      double best_cost = 0.0;
      for (int u = 0; u < v; ++u) {
        if (!left[u]) continue;
        std::vector<int> sc = union_scope(sim, u);
        const double cost = std::pow(static_cast<double>(s),
                                     std::max<std::size_t>(sc.size(), 1));
        if (best < 0 || cost < best_cost) {
          best = u;
          best_scope = std::move(sc);
          best_cost = cost;
        }
      }
      total_cost += best_cost;
      if (total_cost > cost_cap) {
        throw std::length_error(
            "hom density: elimination cost exceeds budget (about " +
            std::to_string(static_cast<long long>(total_cost)) + " kernel reads for k = " +
            std::to_string(s) + "); the motif is too entangled for this size");
      }
      left[best] = 0;
      std::vector<std::vector<int>> next;
      std::vector<int> reduced;
      for (int x : best_scope) {
        if (x != best) reduced.push_back(x);
      }
      for (auto& sc : sim) {
        if (std::find(sc.begin(), sc.end(), best) == sc.end()) next.push_back(std::move(sc));
      }
      if (!reduced.empty()) next.push_back(std::move(reduced));
      sim = std::move(next);
    }
  }

  double scalar = 1.0;
  for (int round = 0; round < v; ++round) {
    // Re-derive the greedy choice on the live factor list.
    int best = -1;
    double best_cost = 0.0;
    for (int u = 0; u < v; ++u) {
      if (!alive[u]) continue;
      std::vector<int> sc;
      for (const auto& f : factors) {
        if (std::find(f.vars.begin(), f.vars.end(), u) == f.vars.end()) continue;
        std::vector<int> merged;
        std::set_union(sc.begin(), sc.end(), f.vars.begin(), f.vars.end(),
                       std::back_inserter(merged));
        sc = std::move(merged);
      }
      const double cost = std::pow(static_cast<double>(s), std::max<std::size_t>(sc.size(), 1));
      if (best < 0 || cost < best_cost) {
        best = u;
        best_cost = cost;
      }
    }
    const int u = best;
    alive[u] = 0;

    std::vector<HomFactor> touching;
    std::vector<HomFactor> rest;
    std::vector<int> scope;
    for (auto& f : factors) {
      if (std::find(f.vars.begin(), f.vars.end(), u) != f.vars.end()) {
        std::vector<int> merged;
        std::set_union(scope.begin(), scope.end(), f.vars.begin(), f.vars.end(),
                       std::back_inserter(merged));
        scope = std::move(merged);
        touching.push_back(std::move(f));
      } else {
        rest.push_back(std::move(f));
      }
    }
    factors = std::move(rest);

    if (touching.empty()) {
      scalar *= static_cast<double>(s);  // isolated vertex: free choice of image
      continue;
    }

    std::vector<int> out_vars;
    for (int x : scope) {
      if (x != u) out_vars.push_back(x);
    }
    const int arity = static_cast<int>(scope.size());
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < out_vars.size(); ++i) out_size *= s;
    HomFactor result{out_vars, std::vector<double>(out_size, 0.0)};

    // Strides of each scope variable inside each touching factor, and inside
    // the result (0 stride for the eliminated variable).
    std::vector<std::vector<std::size_t>> strides(touching.size(),
                                                  std::vector<std::size_t>(arity, 0));
    for (std::size_t fi = 0; fi < touching.size(); ++fi) {
      const auto& fv = touching[fi].vars;
      std::size_t stride = 1;
      for (int p = static_cast<int>(fv.size()) - 1; p >= 0; --p) {
        const int at = static_cast<int>(std::find(scope.begin(), scope.end(), fv[p]) -
                                        scope.begin());
        strides[fi][at] = stride;
        stride *= s;
      }
    }
    std::vector<std::size_t> out_strides(arity, 0);
    {
      std::size_t stride = 1;
      for (int p = static_cast<int>(out_vars.size()) - 1; p >= 0; --p) {
        const int at = static_cast<int>(std::find(scope.begin(), scope.end(), out_vars[p]) -
                                        scope.begin());
        out_strides[at] = stride;
        stride *= s;
      }
    }

    std::vector<int> digits(arity, 0);
    std::vector<std::size_t> offsets(touching.size(), 0);
    std::size_t out_off = 0;
    for (;;) {
      double prod = 1.0;
      for (std::size_t fi = 0; fi < touching.size(); ++fi) prod *= touching[fi].table[offsets[fi]];
      result.table[out_off] += prod;
      int pos = arity - 1;
      for (; pos >= 0; --pos) {
        if (++digits[pos] < s) {
          for (std::size_t fi = 0; fi < touching.size(); ++fi) offsets[fi] += strides[fi][pos];
          out_off += out_strides[pos];
          break;
        }
        digits[pos] = 0;
        for (std::size_t fi = 0; fi < touching.size(); ++fi) {
          offsets[fi] -= strides[fi][pos] * (s - 1);
        }
        out_off -= out_strides[pos] * (s - 1);
      }
      if (pos < 0) break;
    }

    if (result.vars.empty()) {
      scalar *= result.table[0];
    } else {
      factors.push_back(std::move(result));
    }
  }
  return scalar;
}

inline double hom_density_kernel(const Motif& f, const double* kernel, int s,
                                 double cost_cap = 1e8) {
  std::vector<HomFactor> factors;
  factors.reserve(f.edges.size());
  for (const auto& [a, b] : f.edges) {
    HomFactor fac;
    fac.vars = {a, b};
    fac.table.assign(kernel, kernel + static_cast<std::size_t>(s) * s);
    factors.push_back(std::move(fac));
  }
  const double total = eliminate_all(std::move(factors), f.v, s, cost_cap);
  return total / std::pow(static_cast<double>(s), f.v);
}

}  // namespace detail

// Homomorphism density of a motif in a weighted graph, by greedy vertex
// elimination. Exact; cost depends on the motif's connectivity, not k^v.
inline double hom_density_graph(const Motif& f, const WeightedGraph& g) {
  return detail::hom_density_kernel(f, g.data().data(), g.size());
}

// Plain sum over all k^v maps. Kept as an independent cross-check for the
// elimination evaluator; guarded by an enumeration budget.
inline double hom_density_naive(const Motif& f, const WeightedGraph& g) {
  return detail::hom_density_kernel_naive(f, g.data().data(), g.size());
}

// Homomorphism density in a step graphon (the integral reduces to a sum over
// block assignments because blocks have equal measure).
inline double hom_density_graphon(const Motif& f, const StepGraphon& w) {
  return detail::hom_density_kernel(f, w.values().data(), w.blocks());
}

inline double hom_density_graphon_naive(const Motif& f, const StepGraphon& w) {
  return detail::hom_density_kernel_naive(f, w.values().data(), w.blocks());
}

// Density over injective maps only, normalized by the falling factorial
// k(k-1)...(k-v+1).
inline double injective_hom_density(const Motif& f, const WeightedGraph& g) {
  const int k = g.size();
  const int v = f.v;
  if (v > k) {
    throw std::invalid_argument("injective_hom_density: motif has more vertices (" +
                                std::to_string(v) + ") than the graph (" + std::to_string(k) +
                                ")");
  }
  double maps = 1.0;
  for (int i = 0; i < v; ++i) maps *= static_cast<double>(k - i);
  if (maps > 1e8) {
    throw std::length_error("injective_hom_density: too many injective maps to enumerate");
  }
  // Edges incident to each vertex with both endpoints already placed when
  // that vertex is assigned, so the partial product can prune early.
  std::vector<std::vector<std::pair<int, int>>> ready(v);
  for (const auto& [a, b] : f.edges) ready[std::max(a, b)].emplace_back(a, b);

  std::vector<int> phi(v, -1);
  std::vector<char> used(k, 0);
  double total = 0.0;
  std::vector<double> partial(v + 1, 1.0);
  int depth = 0;
  std::vector<int> cursor(v, 0);
  while (depth >= 0) {
    if (depth == v) {
      total += partial[v];
      --depth;
      continue;
    }
    int& c = cursor[depth];
    if (phi[depth] >= 0) {
      used[phi[depth]] = 0;
      phi[depth] = -1;
    }
    bool advanced = false;
    while (c < k) {
      const int cand = c++;
      if (used[cand]) continue;
      double prod = partial[depth];
      for (const auto& [a, b] : ready[depth]) {
        prod *= g.weight(a == depth ? cand : phi[a], b == depth ? cand : phi[b]);
        if (prod == 0.0) break;
      }
      phi[depth] = cand;
      used[cand] = 1;
      partial[depth + 1] = prod;
      if (prod == 0.0) {
        used[cand] = 0;
        phi[depth] = -1;
        continue;
      }
      ++depth;
      if (depth < v) cursor[depth] = 0;
      advanced = true;
      break;
    }
    if (!advanced) {
      cursor[depth] = 0;
      --depth;
    }
  }
  return total / maps;
}

// Closed forms ------------------------------------------------------------

// Cycle density from the normalized adjacency spectrum: t(C_m, G) equals the
// sum of the m-th powers of the eigenvalues of A/k, i.e. (number of atoms)
// times the m-th moment of the spectral measure. Expects the unmerged
// spectrum (one atom per eigenvalue).
inline double cycle_density_via_spectrum(int m, const PointMeasure& spec) {
  if (m < 3) throw std::invalid_argument("cycle_density_via_spectrum: cycles need m >= 3");
  if (spec.atoms.empty()) throw std::invalid_argument("cycle_density_via_spectrum: empty measure");
  double moment = 0.0;
  for (const auto& atom : spec.atoms) moment += atom.mass * std::pow(atom.value, m);
  return static_cast<double>(spec.atoms.size()) * moment;
}

// Star density from normalized degrees: t(S_v, G) = (1/k) * sum_i d_i^(v-1).
inline double star_density_via_degrees(int v, const WeightedGraph& g) {
  if (v < 2) throw std::invalid_argument("star_density_via_degrees: stars need v >= 2");
  const std::vector<double> deg = g.normalized_degrees();
  double s = 0.0;
  for (double d : deg) s += std::pow(d, v - 1);
  return s / g.size();
}

// Path density via repeated mat-vec: t(P_v, G) = k^{-v} * 1^T A^{v-1} 1.
inline double path_density(int v, const WeightedGraph& g) {
  if (v < 2) throw std::invalid_argument("path_density: paths need v >= 2");
  const int k = g.size();
  std::vector<double> x(k, 1.0), y(k);
  for (int step = 0; step + 1 < v; ++step) {
    for (int i = 0; i < k; ++i) {
      const double* row = g.row(i);
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    x.swap(y);
  }
  double total = 0.0;
  for (double xi : x) total += xi;
  return total / std::pow(static_cast<double>(k), v);
}

// Cycle density via the trace of A^m, using dense symmetric products. Used
// as the cycle fast path where no spectrum is available.
inline double cycle_density_via_trace(int m, const WeightedGraph& g) {
  if (m < 3) throw std::invalid_argument("cycle_density_via_trace: cycles need m >= 3");
  const int k = g.size();
  // P = A^(m-2), accumulated column by column; trace(A^m) = sum_ij A_ij (A^{m-1})_ij.
  std::vector<double> power(g.data());
  std::vector<double> next(static_cast<std::size_t>(k) * k);
  for (int step = 0; step + 3 < m; ++step) {
    for (int i = 0; i < k; ++i) {
      const double* arow = g.row(i);
      double* out = &next[static_cast<std::size_t>(i) * k];
      for (int j = 0; j < k; ++j) out[j] = 0.0;
      for (int l = 0; l < k; ++l) {
        const double a = arow[l];
        if (a == 0.0) continue;
        const double* prow = &power[static_cast<std::size_t>(l) * k];
        for (int j = 0; j < k; ++j) out[j] += a * prow[j];
      }
    }
    power.swap(next);
  }
  // power = A^(m-2); trace(A^m) = sum_{i,l} (A^2)_il * power_li done row-wise.
  double trace = 0.0;
  std::vector<double> arow2(k);
  for (int i = 0; i < k; ++i) {
    const double* arow = g.row(i);
    for (int j = 0; j < k; ++j) arow2[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const double a = arow[l];
      if (a == 0.0) continue;
      const double* brow = g.row(l);
      for (int j = 0; j < k; ++j) arow2[j] += a * brow[j];
    }
    const double* prow = &power[static_cast<std::size_t>(i) * k];
    for (int j = 0; j < k; ++j) trace += arow2[j] * prow[j];
  }
  return trace / std::pow(static_cast<double>(k), m);
}

// Density of F in every graph of an ensemble, as an equal-mass measure.
// Dispatches to the closed forms when the motif is a cycle, star, or path.
inline double motif_density(const Motif& f, const WeightedGraph& g) {
  if (f.edge_count() == 0) return 1.0;
  if (f.is_cycle()) return cycle_density_via_trace(f.v, g);
  const int center = f.star_center();
  if (center >= 0) return star_density_via_degrees(f.v, g);
  if (f.is_path()) return path_density(f.v, g);
  return hom_density_graph(f, g);
}

inline PointMeasure empirical_density_measure(const Motif& f,
                                              const std::vector<WeightedGraph>& graphs) {
  if (graphs.empty()) {
    throw std::invalid_argument("empirical_density_measure: empty ensemble");
  }
  std::vector<double> values;
  values.reserve(graphs.size());
  for (const auto& g : graphs) values.push_back(motif_density(f, g));
  return PointMeasure::uniform_on(values);
}

}  // namespace graphlim
