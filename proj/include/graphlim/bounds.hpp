#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/hom.hpp"
#include "graphlim/motif.hpp"
#include "graphlim/point_measure.hpp"
#include "graphlim/spectra.hpp"
#include "graphlim/transport.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

// Separation bounds: lower bounds on the cut distance between two graphons
// computed from finite samples of k-node weighted graphs. `dist` is the
// observed Wasserstein distance between the two empirical statistics, n is
// the number of sampled graphs per group (real-valued so asymptotic regimes
// can be probed directly), and c is the latent-position concentration
// constant of the confidence terms.

namespace detail {

inline void check_positive(double n, const char* what) {
  if (!(n >= 1.0)) throw std::invalid_argument(std::string(what) + " must be at least 1");
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace detail

// Motif route: delta_cut >= (dist - 9 n^{-1/3}) / e(F).
inline double thm1_bound(double dist, int motif_edges, double n) {
  if (motif_edges < 1) throw std::invalid_argument("thm1_bound: motif needs at least one edge");
  detail::check_positive(n, "thm1_bound: n");
  return (dist - 9.0 * std::pow(n, -1.0 / 3.0)) / static_cast<double>(motif_edges);
}

inline double thm1_confidence(double k, double n, int motif_edges, double c) {
  if (motif_edges < 1) throw std::invalid_argument("thm1_confidence: motif needs at least one edge");
  detail::check_positive(n, "thm1_confidence: n");
  detail::check_positive(k, "thm1_confidence: k");
  if (!(c > 0.0)) throw std::invalid_argument("thm1_confidence: c must be positive");
  const double e2 = static_cast<double>(motif_edges) * motif_edges;
  const double sampling = 2.0 * std::exp(-k * std::pow(n, -2.0 / 3.0) / (2.0 * e2));
  const double latent = 2.0 * std::exp(-0.09 * c * std::pow(n, 2.0 / 3.0));
  return detail::clamp01(1.0 - sampling - latent);
}

// Spectral route: delta_cut >= v^{-2} 2^{-1} ((4e)^{-v} (dist - 3/(pi v)) - 18 v n^{-1/3}).
// Evaluated in the expanded form so (4e)^v never multiplies the n term;
// the multiplied-out textbook form overflows for moderate v.
inline double thm2_bound(double dist, int v, double n) {
  if (v < 1) throw std::invalid_argument("thm2_bound: v must be at least 1");
  detail::check_positive(n, "thm2_bound: n");
  const double vd = static_cast<double>(v);
  const double decay = std::pow(4.0 * std::exp(1.0), -vd);
  const double main = decay * (dist - 3.0 / (M_PI * vd));
  const double sampling = 18.0 * vd * std::pow(n, -1.0 / 3.0);
  return (main - sampling) / (2.0 * vd * vd);
}

inline double thm2_confidence(double k, double n, int v, double c) {
  if (v < 1) throw std::invalid_argument("thm2_confidence: v must be at least 1");
  detail::check_positive(n, "thm2_confidence: n");
  detail::check_positive(k, "thm2_confidence: k");
  if (!(c > 0.0)) throw std::invalid_argument("thm2_confidence: c must be positive");
  const double vd = static_cast<double>(v);
  const double sampling = 2.0 * vd * std::exp(-k * std::pow(n, -2.0 / 3.0) / (2.0 * vd * vd));
  const double latent = 2.0 * vd * std::exp(-0.09 * c * std::pow(n, 2.0 / 3.0));
  return detail::clamp01(1.0 - sampling - latent);
}

// Two-sample variants for groups of different sizes; each group contributes
// its own finite-sample term, and each concentration term appears once per
// group in the confidence.
inline double hetero_thm1_bound(double dist, int motif_edges, double n1, double n2) {
  if (motif_edges < 1) throw std::invalid_argument("hetero_thm1_bound: motif needs an edge");
  detail::check_positive(n1, "hetero_thm1_bound: n1");
  detail::check_positive(n2, "hetero_thm1_bound: n2");
  const double rates = std::pow(n1, -1.0 / 3.0) + std::pow(n2, -1.0 / 3.0);
  return (dist - 5.0 * rates) / static_cast<double>(motif_edges);
}

inline double hetero_thm1_confidence(double k, double n1, double n2, int motif_edges, double c) {
  if (motif_edges < 1) throw std::invalid_argument("hetero_thm1_confidence: motif needs an edge");
  const double e2 = static_cast<double>(motif_edges) * motif_edges;
  double miss = 0.0;
  for (double n : {n1, n2}) {
    detail::check_positive(n, "hetero_thm1_confidence: n");
    miss += std::exp(-k * std::pow(n, -2.0 / 3.0) / (2.0 * e2));
    miss += std::exp(-0.09 * c * std::pow(n, 2.0 / 3.0));
  }
  return detail::clamp01(1.0 - miss);
}

inline double hetero_thm2_bound(double dist, int v, double n1, double n2) {
  if (v < 1) throw std::invalid_argument("hetero_thm2_bound: v must be at least 1");
  detail::check_positive(n1, "hetero_thm2_bound: n1");
  detail::check_positive(n2, "hetero_thm2_bound: n2");
  const double vd = static_cast<double>(v);
  const double decay = std::pow(4.0 * std::exp(1.0), -vd);
  const double main = decay * (dist - 3.0 / (M_PI * vd));
  const double rates = std::pow(n1, -1.0 / 3.0) + std::pow(n2, -1.0 / 3.0);
  return (main - 18.0 * vd * rates) / (2.0 * vd * vd);
}

inline double hetero_thm2_confidence(double k, double n1, double n2, int v, double c) {
  if (v < 1) throw std::invalid_argument("hetero_thm2_confidence: v must be at least 1");
  const double vd = static_cast<double>(v);
  double miss = 0.0;
  for (double n : {n1, n2}) {
    detail::check_positive(n, "hetero_thm2_confidence: n");
    miss += vd * std::exp(-k * std::pow(n, -2.0 / 3.0) / (2.0 * vd * vd));
    miss += vd * std::exp(-0.09 * c * std::pow(n, 2.0 / 3.0));
  }
  return detail::clamp01(1.0 - miss);
}

// Outcome of a two-group separation test.
struct SeparationReport {
  std::string mode;        // "motif" or "spectral"
  std::string verdict;     // "distinct" or "inconclusive"
  double distance = 0.0;   // Wasserstein distance between the group statistics
  double bound = 0.0;      // lower bound on the cut distance
  double confidence = 0.0;
  double threshold = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double k = 0.0;
  double c = 0.0;
  int motif_edges = 0;  // motif mode
  int v = 0;            // spectral mode: moment order attaining the bound

  bool distinct() const { return verdict == "distinct"; }
};

namespace detail {

inline int common_size(const std::vector<WeightedGraph>& graphs, const char* what) {
  if (graphs.empty()) throw std::invalid_argument(std::string(what) + ": empty group");
  const int k = graphs.front().size();
  for (const auto& g : graphs) {
    if (g.size() != k) {
      throw std::invalid_argument(std::string(what) + ": graphs must share the same node count");
    }
  }
  return k;
}

inline void finish_verdict(SeparationReport& report, double threshold) {
  report.threshold = threshold;
  report.verdict =
      (report.bound > 0.0 && report.confidence >= threshold) ? "distinct" : "inconclusive";
}

}  // namespace detail

// Motif-route separation test: compares the empirical motif-density measures
// of the two groups. Declares the graphons distinct when the cut-distance
// lower bound is positive at the requested confidence.
inline SeparationReport equality_test_motif(const std::vector<WeightedGraph>& group1,
                                            const std::vector<WeightedGraph>& group2,
                                            const Motif& f, double c, double threshold) {
  const int k1 = detail::common_size(group1, "equality_test_motif");
  const int k2 = detail::common_size(group2, "equality_test_motif");
  if (k1 != k2) {
    throw std::invalid_argument("equality_test_motif: both groups must use the same k");
  }
  if (f.edge_count() < 1) {
    throw std::invalid_argument("equality_test_motif: motif needs at least one edge");
  }
  SeparationReport report;
  report.mode = "motif";
  report.k = k1;
  report.c = c;
  report.n1 = static_cast<double>(group1.size());
  report.n2 = static_cast<double>(group2.size());
  report.motif_edges = f.edge_count();
  const PointMeasure t1 = empirical_density_measure(f, group1);
  const PointMeasure t2 = empirical_density_measure(f, group2);
  report.distance = wasserstein_1d(t1, t2);
  if (group1.size() == group2.size()) {
    report.bound = thm1_bound(report.distance, f.edge_count(), report.n1);
    report.confidence = thm1_confidence(report.k, report.n1, f.edge_count(), c);
  } else {
    report.bound = hetero_thm1_bound(report.distance, f.edge_count(), report.n1, report.n2);
    report.confidence = hetero_thm1_confidence(report.k, report.n1, report.n2, f.edge_count(), c);
  }
  detail::finish_verdict(report, threshold);
  return report;
}

// Spectral-route separation test: nested Wasserstein distance between the
// adjacency spectra ensembles, with the bound maximized over the moment
// order v = 1..v_max (the reported v attains the maximum).
inline SeparationReport equality_test_spectral(const std::vector<WeightedGraph>& group1,
                                               const std::vector<WeightedGraph>& group2, double c,
                                               double threshold, int v_max = 8) {
  const int k1 = detail::common_size(group1, "equality_test_spectral");
  const int k2 = detail::common_size(group2, "equality_test_spectral");
  if (k1 != k2) {
    throw std::invalid_argument("equality_test_spectral: both groups must use the same k");
  }
  if (v_max < 1) throw std::invalid_argument("equality_test_spectral: v_max must be at least 1");
  SeparationReport report;
  report.mode = "spectral";
  report.k = k1;
  report.c = c;
  report.n1 = static_cast<double>(group1.size());
  report.n2 = static_cast<double>(group2.size());
  const MeasureEnsemble e1 = ensemble_spectra(group1, SpectrumKind::adjacency);
  const MeasureEnsemble e2 = ensemble_spectra(group2, SpectrumKind::adjacency);
  report.distance = nested_wasserstein(e1, e2);
  const bool equal_sizes = group1.size() == group2.size();
  report.bound = -std::numeric_limits<double>::infinity();
  for (int v = 1; v <= v_max; ++v) {
    const double b = equal_sizes ? thm2_bound(report.distance, v, report.n1)
                                 : hetero_thm2_bound(report.distance, v, report.n1, report.n2);
    if (b > report.bound) {
      report.bound = b;
      report.v = v;
    }
  }
  report.confidence = equal_sizes
                          ? thm2_confidence(report.k, report.n1, report.v, c)
                          : hetero_thm2_confidence(report.k, report.n1, report.n2, report.v, c);
  detail::finish_verdict(report, threshold);
  return report;
}

}  // namespace graphlim
