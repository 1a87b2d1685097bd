#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "graphlim/dataset.hpp"
#include "graphlim/features.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

struct LinearModel {
  std::vector<double> w;
  double b = 0.0;

  double score(const double* x) const {
    double s = b;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
    return s;
  }

  // sign(w.x + b) with sign(0) = +1, reported as a {0,1} label.
  int predict(const double* x) const { return score(x) >= 0.0 ? 1 : 0; }
  int predict(const std::vector<double>& x) const { return predict(x.data()); }
};

// Mean hinge loss plus l1 penalty, the quantity train_l1_linear minimizes.
inline double hinge_objective(const FeatureMatrix& x, const std::vector<int>& y,
                              const LinearModel& model, double lambda) {
  double loss = 0.0;
  for (int i = 0; i < x.n; ++i) {
    const double yi = y[i] ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - yi * model.score(x.row(i)));
  }
  loss /= x.n;
  for (double wj : model.w) loss += lambda * std::fabs(wj);
  return loss;
}

// l1-penalized linear classifier fit by deterministic full-batch subgradient
// descent: 1e4 iterations, step 1/sqrt(iter), averaged iterate, intercept
// unpenalized, subgradient of |.| taken as 0 at 0. The schedule has no
// random component; the seed parameter is accepted for interface stability
// and does not influence the result.
inline LinearModel train_l1_linear(const FeatureMatrix& x, const std::vector<int>& y,
                                   double lambda, std::uint64_t /*seed*/ = 0) {
  const int n = x.n;
  const int p = x.p;
  if (n < 2) throw std::invalid_argument("train_l1_linear: need at least 2 rows");
  if (static_cast<int>(y.size()) != n) {
    throw std::invalid_argument("train_l1_linear: label count does not match rows");
  }
  if (!(lambda >= 0.0)) throw std::invalid_argument("train_l1_linear: lambda must be >= 0");
  bool saw0 = false, saw1 = false;
  for (int yi : y) {
    if (yi == 0) saw0 = true;
    else if (yi == 1) saw1 = true;
    else throw std::invalid_argument("train_l1_linear: labels must be 0 or 1");
  }
  if (!saw0 || !saw1) throw std::invalid_argument("train_l1_linear: only one class present");

  // Feature-major copy padded to blocks of 16 so the score pass keeps two
  // 8-wide accumulators live across the feature loop. Padded rows get
  // ysign 0, which keeps them out of the gradient.
  const int npad = (n + 15) & ~15;
  std::vector<double> xt(static_cast<std::size_t>(p) * npad, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* row = x.row(i);
    for (int j = 0; j < p; ++j) xt[static_cast<std::size_t>(j) * npad + i] = row[j];
  }
  std::vector<double> ysign(npad, 0.0);
  for (int i = 0; i < n; ++i) ysign[i] = y[i] ? 1.0 : -1.0;

  std::vector<double> w(p, 0.0), wsum(p, 0.0), grad(p), scores(npad);
  double b = 0.0, bsum = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  const int iterations = 10000;

  for (int t = 1; t <= iterations; ++t) {
    for (int i0 = 0; i0 < npad; i0 += 16) {
      double a0[8], a1[8];
      for (int l = 0; l < 8; ++l) a0[l] = b;
      for (int l = 0; l < 8; ++l) a1[l] = b;
      const double* col = &xt[i0];
      for (int j = 0; j < p; ++j, col += npad) {
        const double wj = w[j];
        for (int l = 0; l < 8; ++l) a0[l] += wj * col[l];
        for (int l = 0; l < 8; ++l) a1[l] += wj * col[l + 8];
      }
      for (int l = 0; l < 8; ++l) scores[i0 + l] = a0[l];
      for (int l = 0; l < 8; ++l) scores[i0 + 8 + l] = a1[l];
    }

    std::fill(grad.begin(), grad.end(), 0.0);
    double gb = 0.0;
    for (int i = 0; i < n; ++i) {
      const double yi = ysign[i];
      if (yi * scores[i] < 1.0) {
        const double* row = x.row(i);
        for (int j = 0; j < p; ++j) grad[j] += yi * row[j];
        gb += yi;
      }
    }

    const double eta = 1.0 / std::sqrt(static_cast<double>(t));
    const double scale = eta * inv_n;
    const double shrink = eta * lambda;
    for (int j = 0; j < p; ++j) {
      double wj = w[j] + scale * grad[j];
      if (w[j] > 0.0) wj -= shrink;
      else if (w[j] < 0.0) wj += shrink;
      w[j] = wj;
      wsum[j] += wj;
    }
    b += scale * gb;
    bsum += b;
  }

  LinearModel model;
  model.w.resize(p);
  for (int j = 0; j < p; ++j) model.w[j] = wsum[j] / iterations;
  model.b = bsum / iterations;
  return model;
}

inline LinearModel train_l1_linear(const std::vector<std::vector<double>>& rows,
                                   const std::vector<int>& y, double lambda,
                                   std::uint64_t seed = 0) {
  if (rows.empty()) throw std::invalid_argument("train_l1_linear: need at least 2 rows");
  FeatureMatrix x(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < x.n; ++i) {
    if (static_cast<int>(rows[i].size()) != x.p) {
      throw std::invalid_argument("train_l1_linear: ragged rows");
    }
    for (int j = 0; j < x.p; ++j) x.at(i, j) = rows[i][j];
  }
  return train_l1_linear(x, y, lambda, seed);
}

namespace detail {

// One leave-one-out fold with standardization fit on the training rows only
// and applied to the held-out row (constant training columns zero in both).
// Folds depend only on the features, so permutation tests reuse them across
// label reshuffles.
struct LoocvFold {
  FeatureMatrix train;        // standardized training rows, fold order
  std::vector<double> test;   // standardized held-out row
};

inline std::vector<LoocvFold> loocv_folds(const FeatureMatrix& raw) {
  const int n = raw.n;
  const int p = raw.p;
  std::vector<LoocvFold> folds(n);
  std::vector<double> mean(p), sd(p);
  for (int hold = 0; hold < n; ++hold) {
    const double m = static_cast<double>(n - 1);
    for (int j = 0; j < p; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i != hold) s += raw.at(i, j);
      }
      mean[j] = s / m;
      double var = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i != hold) {
          const double d = raw.at(i, j) - mean[j];
          var += d * d;
        }
      }
      const double s_j = std::sqrt(var / m);
      sd[j] = (s_j <= 1e-12 * (1.0 + std::fabs(mean[j]))) ? 0.0 : s_j;
    }
    LoocvFold& fold = folds[hold];
    fold.train = FeatureMatrix(n - 1, p);
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (i == hold) continue;
      for (int j = 0; j < p; ++j) {
        fold.train.at(r, j) = sd[j] == 0.0 ? 0.0 : (raw.at(i, j) - mean[j]) / sd[j];
      }
      ++r;
    }
    fold.test.resize(p);
    for (int j = 0; j < p; ++j) {
      fold.test[j] = sd[j] == 0.0 ? 0.0 : (raw.at(hold, j) - mean[j]) / sd[j];
    }
  }
  return folds;
}

inline double loocv_from_folds(const std::vector<LoocvFold>& folds, const std::vector<int>& y,
                               double lambda, std::uint64_t seed,
                               std::vector<int>* predictions = nullptr) {
  const int n = static_cast<int>(folds.size());
  if (predictions) predictions->assign(n, 0);
  int correct = 0;
  std::vector<int> ytrain(n - 1);
  for (int hold = 0; hold < n; ++hold) {
    int r = 0;
    bool saw0 = false, saw1 = false;
    for (int i = 0; i < n; ++i) {
      if (i == hold) continue;
      ytrain[r] = y[i];
      (y[i] ? saw1 : saw0) = true;
      ++r;
    }
    int predicted;
    if (!saw0 || !saw1) {
      // Single-class training fold (possible at tiny n): the fit would be
      // degenerate; predict that class.
      predicted = saw1 ? 1 : 0;
    } else {
      const LinearModel model =
          train_l1_linear(folds[hold].train, ytrain, lambda, seed + static_cast<std::uint64_t>(hold));
      predicted = model.predict(folds[hold].test);
    }
    if (predictions) (*predictions)[hold] = predicted;
    if (predicted == y[hold]) ++correct;
  }
  return static_cast<double>(correct) / n;
}

}  // namespace detail

// Leave-one-out accuracy on precomputed raw (unstandardized) features.
// `predictions`, when given, receives the per-fold predicted labels.
inline double loocv_accuracy(const FeatureMatrix& raw, const std::vector<int>& y, double lambda,
                             std::uint64_t seed, std::vector<int>* predictions = nullptr) {
  if (raw.n < 3) throw std::invalid_argument("loocv: need at least 3 items");
  if (static_cast<int>(y.size()) != raw.n) {
    throw std::invalid_argument("loocv: label count does not match rows");
  }
  return detail::loocv_from_folds(detail::loocv_folds(raw), y, lambda, seed, predictions);
}

inline double loocv(const Dataset& ds, const FeatureConfig& config, double lambda,
                    std::uint64_t seed) {
  return loocv_accuracy(raw_features(ds, config), ds.labels(), lambda, seed);
}

struct PermutationTestResult {
  double observed_accuracy = 0.0;
  double p_value = 1.0;
  std::vector<double> permuted_accuracies;
};

// Label-permutation significance test for the leave-one-out accuracy with
// the add-one estimator p = (1 + #{perm >= observed}) / (1 + n_perm).
// Fold standardization is feature-only and shared across permutations.
inline PermutationTestResult permutation_test(const Dataset& ds, const FeatureConfig& config,
                                              double lambda, int n_perm, std::uint64_t seed) {
  if (n_perm < 19) throw std::invalid_argument("permutation_test: need at least 19 permutations");
  const FeatureMatrix raw = raw_features(ds, config);
  if (raw.n < 3) throw std::invalid_argument("permutation_test: need at least 3 items");
  const std::vector<detail::LoocvFold> folds = detail::loocv_folds(raw);
  const std::vector<int> y = ds.labels();

  PermutationTestResult result;
  result.observed_accuracy = detail::loocv_from_folds(folds, y, lambda, seed);
  result.permuted_accuracies.reserve(n_perm);
  int at_least = 0;
  std::vector<int> yperm(y);
  for (int perm = 0; perm < n_perm; ++perm) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(perm) + 1);
    yperm = y;
    rng.shuffle(yperm);
    const double acc = detail::loocv_from_folds(folds, yperm, lambda, seed);
    result.permuted_accuracies.push_back(acc);
    if (acc >= result.observed_accuracy) ++at_least;
  }
  result.p_value = static_cast<double>(1 + at_least) / (1 + n_perm);
  return result;
}

}  // namespace graphlim
