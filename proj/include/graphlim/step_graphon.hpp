#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/weighted_graph.hpp"

namespace graphlim {

// Step graphon: a symmetric function [0,1]^2 -> [0,1] that is constant on the
// m x m grid of equal-measure blocks.
class StepGraphon {
 public:
  StepGraphon(int m, std::vector<double> values) : m_(m), v_(std::move(values)) {
    if (m_ < 1) throw std::invalid_argument("StepGraphon: m must be at least 1");
    if (v_.size() != static_cast<std::size_t>(m_) * m_) {
      throw std::invalid_argument("StepGraphon: expected " + std::to_string(m_ * m_) +
                                  " block values, got " + std::to_string(v_.size()));
    }
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        const double x = at(i, j);
        if (!(x >= 0.0 && x <= 1.0)) {
          throw std::invalid_argument("StepGraphon: block value " + std::to_string(x) +
                                      " outside [0, 1]");
        }
        if (x != at(j, i)) throw std::invalid_argument("StepGraphon: block matrix must be symmetric");
      }
    }
  }

  static StepGraphon constant(double p) { return StepGraphon(1, {p}); }

  static StepGraphon from_matrix(const std::vector<std::vector<double>>& rows) {
    const int m = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(m) * m);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m) {
        throw std::invalid_argument("StepGraphon: block matrix must be square");
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return StepGraphon(m, std::move(flat));
  }

  int blocks() const { return m_; }

  double value(int i, int j) const {
    if (i < 0 || i >= m_ || j < 0 || j >= m_) {
      throw std::out_of_range("StepGraphon: block index out of range");
    }
    return at(i, j);
  }

  // Block containing x; x = 1 belongs to the last block.
  int block_of(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error("StepGraphon: point " + std::to_string(x) + " outside [0, 1]");
    }
    const int b = static_cast<int>(x * m_);
    return b >= m_ ? m_ - 1 : b;
  }

  double eval(double x, double y) const { return at(block_of(x), block_of(y)); }

  // Split every block into `factor` equal parts. The function is unchanged
  // as a function on [0,1]^2.
  StepGraphon refine(int factor) const {
    if (factor < 1) throw std::invalid_argument("StepGraphon: refine factor must be at least 1");
    const int m2 = m_ * factor;
    std::vector<double> values(static_cast<std::size_t>(m2) * m2);
    for (int i = 0; i < m2; ++i) {
      for (int j = 0; j < m2; ++j) {
        values[static_cast<std::size_t>(i) * m2 + j] = at(i / factor, j / factor);
      }
    }
    return StepGraphon(m2, std::move(values));
  }

  const std::vector<double>& values() const { return v_; }

 private:
  double at(int i, int j) const { return v_[static_cast<std::size_t>(i) * m_ + j]; }

  int m_;
  std::vector<double> v_;
};

// Empirical graphon of a graph: k x k blocks holding the edge weights
// (diagonal blocks are zero, matching the zero diagonal of the graph).
inline StepGraphon graphon_of_graph(const WeightedGraph& g) {
  return StepGraphon(g.size(), g.data());
}

}  // namespace graphlim
