#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/point_measure.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

enum class SpectrumKind { adjacency, laplacian, degree };

inline SpectrumKind spectrum_kind_from_name(const std::string& name) {
  if (name == "adjacency") return SpectrumKind::adjacency;
  if (name == "laplacian") return SpectrumKind::laplacian;
  if (name == "degree") return SpectrumKind::degree;
  throw std::invalid_argument("unknown spectrum kind: " + name);
}

inline std::string spectrum_kind_name(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::adjacency: return "adjacency";
    case SpectrumKind::laplacian: return "laplacian";
    case SpectrumKind::degree: return "degree";
  }
  return "?";
}

namespace detail {

inline PointMeasure measure_from_eigenvalues(Eigen::VectorXd values, double shift, int k) {
  std::vector<PointMeasure::Atom> atoms;
  atoms.reserve(k);
  const double mass = 1.0 / static_cast<double>(k);
  for (int i = 0; i < k; ++i) {
    double v = values[i] + shift;
    v = std::clamp(v, -1.0, 1.0);
    atoms.push_back({v, mass});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const PointMeasure::Atom& a, const PointMeasure::Atom& b) {
              return a.value < b.value;
            });
  return PointMeasure(std::move(atoms));
}

}  // namespace detail

// Spectrum of A/k as a measure: k atoms of mass 1/k, ascending. Eigenvalues
// of A/k lie in [-1, 1] since row sums of A are at most k.
inline PointMeasure adjacency_spectrum(const WeightedGraph& g) {
  const int k = g.size();
  Eigen::Map<const Eigen::MatrixXd> a(g.data().data(), k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a / static_cast<double>(k),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("adjacency_spectrum: eigensolver failed");
  }
  return detail::measure_from_eigenvalues(solver.eigenvalues(), 0.0, k);
}

// Spectrum of (D - A)/k shifted by -1 into [-1, 1]. The constant vector is
// always an eigenvector with raw eigenvalue 0, so the smallest atom is -1 up
// to solver precision.
inline PointMeasure laplacian_spectrum(const WeightedGraph& g) {
  const int k = g.size();
  Eigen::Map<const Eigen::MatrixXd> a(g.data().data(), k, k);
  Eigen::MatrixXd lap = -a;
  const Eigen::VectorXd row_sums = a.rowwise().sum();
  lap.diagonal() += row_sums;
  lap /= static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("laplacian_spectrum: eigensolver failed");
  }
  return detail::measure_from_eigenvalues(solver.eigenvalues(), -1.0, k);
}

// Normalized degrees as a measure: k atoms of mass 1/k, ascending, in [0, 1].
inline PointMeasure degree_measure(const WeightedGraph& g) {
  std::vector<double> deg = g.normalized_degrees();
  std::sort(deg.begin(), deg.end());
  return PointMeasure::uniform_on(deg);
}

inline PointMeasure spectrum(const WeightedGraph& g, SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::adjacency: return adjacency_spectrum(g);
    case SpectrumKind::laplacian: return laplacian_spectrum(g);
    case SpectrumKind::degree: return degree_measure(g);
  }
  throw std::logic_error("spectrum: unknown kind");
}

inline MeasureEnsemble ensemble_spectra(const std::vector<WeightedGraph>& graphs,
                                        SpectrumKind kind) {
  MeasureEnsemble out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(spectrum(g, kind));
  return out;
}

// 2r summary values of a measure: the r smallest and r largest atom values
// in ascending order (signed order). With abs_order the 2r atoms of largest
// absolute value are taken instead, ordered by descending absolute value
// with ties broken by ascending value.
inline std::vector<double> truncate_features(const PointMeasure& measure, int r,
                                             bool abs_order = false) {
  if (r < 1) throw std::invalid_argument("truncate_features: r must be at least 1");
  const std::size_t need = static_cast<std::size_t>(2) * r;
  if (measure.size() < need) {
    throw std::invalid_argument("truncate_features: measure has " +
                                std::to_string(measure.size()) + " atoms, need at least " +
                                std::to_string(need));
  }
  std::vector<double> values = measure.sorted_values();
  std::vector<double> out;
  out.reserve(need);
  if (!abs_order) {
    for (int i = 0; i < r; ++i) out.push_back(values[i]);
    for (std::size_t i = values.size() - r; i < values.size(); ++i) out.push_back(values[i]);
  } else {
    std::sort(values.begin(), values.end(), [](double a, double b) {
      const double aa = std::fabs(a), ab = std::fabs(b);
      if (aa != ab) return aa > ab;
      return a < b;
    });
    out.assign(values.begin(), values.begin() + need);
  }
  return out;
}

// Column-wise standardization to zero mean and unit variance (population
// convention). Columns that are constant up to rounding noise map to zero;
// the tolerance guards against 1e-17-scale fluctuations from summation
// order blowing up to O(1) garbage after division.
inline std::vector<std::vector<double>> standardize(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows[0].size();
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("standardize: ragged rows");
  }
  const double n = static_cast<double>(rows.size());
  std::vector<std::vector<double>> out(rows.size(), std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    double mean = 0.0;
    for (const auto& row : rows) mean += row[j];
    mean /= n;
    double var = 0.0;
    for (const auto& row : rows) {
      const double d = row[j] - mean;
      var += d * d;
    }
    var /= n;
    const double sd = std::sqrt(var);
    if (sd <= 1e-12 * (1.0 + std::fabs(mean))) continue;
    for (std::size_t i = 0; i < rows.size(); ++i) out[i][j] = (rows[i][j] - mean) / sd;
  }
  return out;
}

}  // namespace graphlim
