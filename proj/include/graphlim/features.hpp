#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/dataset.hpp"
#include "graphlim/spectra.hpp"

namespace graphlim {

// One spectral feature source: a dataset channel viewed through a spectrum
// kind. The classification pipeline concatenates several of these.
struct FeaturePair {
  std::string channel;
  SpectrumKind kind = SpectrumKind::adjacency;
};

struct FeatureConfig {
  std::vector<FeaturePair> pairs;
  int r = 10;
  bool abs_order = false;
};

// Row-major n x p matrix.
struct FeatureMatrix {
  int n = 0;
  int p = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(int n_, int p_) : n(n_), p(p_), data(static_cast<std::size_t>(n_) * p_, 0.0) {}

  double* row(int i) { return &data[static_cast<std::size_t>(i) * p]; }
  const double* row(int i) const { return &data[static_cast<std::size_t>(i) * p]; }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * p + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * p + j]; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n);
    for (int i = 0; i < n; ++i) out[i].assign(row(i), row(i) + p);
    return out;
  }
};

namespace detail {

inline std::string kind_prefix(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::adjacency: return "adj";
    case SpectrumKind::laplacian: return "lap";
    case SpectrumKind::degree: return "deg";
  }
  throw std::logic_error("kind_prefix: unreachable");
}

}  // namespace detail

// Column names for a feature configuration: "<kind>_low_<i>" for the i-th
// smallest value, "<kind>_high_<i>" for the i-th largest (i = 1..r), or
// "<kind>_abs_<i>" (i = 1..2r) under absolute-value ordering. The channel
// name is prefixed only when the configuration draws on several channels.
inline std::vector<std::string> feature_column_names(const FeatureConfig& config) {
  std::set<std::string> channels;
  for (const auto& pair : config.pairs) channels.insert(pair.channel);
  const bool prefix_channel = channels.size() > 1;
  std::vector<std::string> names;
  names.reserve(config.pairs.size() * 2 * config.r);
  for (const auto& pair : config.pairs) {
    const std::string base =
        (prefix_channel ? pair.channel + "_" : std::string()) + detail::kind_prefix(pair.kind);
    if (config.abs_order) {
      for (int i = 1; i <= 2 * config.r; ++i) names.push_back(base + "_abs_" + std::to_string(i));
    } else {
      for (int i = 1; i <= config.r; ++i) names.push_back(base + "_low_" + std::to_string(i));
      for (int i = 1; i <= config.r; ++i) names.push_back(base + "_high_" + std::to_string(i));
    }
  }
  return names;
}

// Unstandardized feature rows: per item, the concatenated truncated spectra
// of every configured channel/kind pair. This is the quantity a
// leave-one-out fold may compute once and standardize per fold.
inline FeatureMatrix raw_features(const Dataset& ds, const FeatureConfig& config) {
  ds.validate();
  if (config.pairs.empty()) throw std::invalid_argument("features: empty configuration");
  if (config.r < 1) throw std::invalid_argument("features: r must be at least 1");
  const int per_pair = 2 * config.r;
  FeatureMatrix x(ds.size(), per_pair * static_cast<int>(config.pairs.size()));
  for (int i = 0; i < ds.size(); ++i) {
    const DatasetItem& item = ds.items[i];
    int offset = 0;
    for (const auto& pair : config.pairs) {
      const auto it = item.channels.find(pair.channel);
      if (it == item.channels.end()) {
        throw std::invalid_argument("features: dataset has no channel '" + pair.channel + "'");
      }
      const std::vector<double> f =
          truncate_features(spectrum(it->second, pair.kind), config.r, config.abs_order);
      for (int j = 0; j < per_pair; ++j) x.at(i, offset + j) = f[j];
      offset += per_pair;
    }
  }
  return x;
}

// Standardized feature matrix plus column names.
inline std::pair<FeatureMatrix, std::vector<std::string>> extract_features(
    const Dataset& ds, const FeatureConfig& config) {
  FeatureMatrix x = raw_features(ds, config);
  const std::vector<std::vector<double>> std_rows = standardize(x.rows());
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.p; ++j) x.at(i, j) = std_rows[i][j];
  }
  return {std::move(x), feature_column_names(config)};
}

}  // namespace graphlim
