#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

// Symmetric edge-weighted graph on k nodes with weights in [0, 1] and an
// all-zero diagonal. Stored dense row-major.
class WeightedGraph {
 public:
  explicit WeightedGraph(int k) : k_(check_size(k)), w_(static_cast<std::size_t>(k) * k, 0.0) {}

  static WeightedGraph from_upper(int k, const std::vector<double>& upper) {
    WeightedGraph g(k);
    const std::size_t expected = static_cast<std::size_t>(k) * (k - 1) / 2;
    if (upper.size() != expected) {
      throw std::invalid_argument("WeightedGraph: expected " + std::to_string(expected) +
                                  " upper-triangle weights, got " + std::to_string(upper.size()));
    }
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        g.set_weight(i, j, upper[idx++]);
      }
    }
    return g;
  }

  static WeightedGraph from_matrix(const std::vector<std::vector<double>>& rows) {
    const int k = static_cast<int>(rows.size());
    WeightedGraph g(k);
    for (int i = 0; i < k; ++i) {
      if (static_cast<int>(rows[i].size()) != k) {
        throw std::invalid_argument("WeightedGraph: matrix must be square");
      }
      if (rows[i][i] != 0.0) {
        throw std::invalid_argument("WeightedGraph: diagonal must be zero");
      }
      for (int j = i + 1; j < k; ++j) {
        if (rows[i][j] != rows[j][i]) {
          throw std::invalid_argument("WeightedGraph: matrix must be symmetric");
        }
        g.set_weight(i, j, rows[i][j]);
      }
    }
    return g;
  }

  int size() const { return k_; }

  double weight(int i, int j) const {
    check_node(i);
    check_node(j);
    return w_[static_cast<std::size_t>(i) * k_ + j];
  }

  void set_weight(int i, int j, double value) {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("WeightedGraph: diagonal must stay zero");
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::invalid_argument("WeightedGraph: weight " + std::to_string(value) +
                                  " outside [0, 1]");
    }
    w_[static_cast<std::size_t>(i) * k_ + j] = value;
    w_[static_cast<std::size_t>(j) * k_ + i] = value;
  }

  // Row-major upper triangle (i < j), the canonical serialized form.
  std::vector<double> upper_triangle() const {
    std::vector<double> upper;
    upper.reserve(static_cast<std::size_t>(k_) * (k_ - 1) / 2);
    for (int i = 0; i < k_; ++i) {
      for (int j = i + 1; j < k_; ++j) {
        upper.push_back(w_[static_cast<std::size_t>(i) * k_ + j]);
      }
    }
    return upper;
  }

  // Degrees normalized by k, so each lies in [0, 1].
  std::vector<double> normalized_degrees() const {
    std::vector<double> deg(k_, 0.0);
    for (int i = 0; i < k_; ++i) {
      double s = 0.0;
      const double* row = &w_[static_cast<std::size_t>(i) * k_];
      for (int j = 0; j < k_; ++j) s += row[j];
      deg[i] = s / k_;
    }
    return deg;
  }

  const std::vector<double>& data() const { return w_; }
  const double* row(int i) const { return &w_[static_cast<std::size_t>(i) * k_]; }

 private:
  static int check_size(int k) {
    if (k < 1) throw std::invalid_argument("WeightedGraph: k must be at least 1");
    return k;
  }

  void check_node(int i) const {
    if (i < 0 || i >= k_) throw std::out_of_range("WeightedGraph: node index out of range");
  }

  int k_;
  std::vector<double> w_;
};

}  // namespace graphlim
