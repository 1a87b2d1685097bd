#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/step_graphon.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

// Assignment of graph nodes to classes 0..classes()-1. Every node must be
// assigned and every class must be non-empty.
class Partition {
 public:
  Partition(int node_count, std::vector<int> assignment)
      : assignment_(std::move(assignment)) {
    if (node_count < 1) throw std::invalid_argument("Partition: node count must be positive");
    if (static_cast<int>(assignment_.size()) != node_count) {
      throw std::invalid_argument("Partition: assignment covers " +
                                  std::to_string(assignment_.size()) + " nodes, expected " +
                                  std::to_string(node_count));
    }
    int max_class = -1;
    for (int c : assignment_) {
      if (c < 0) throw std::invalid_argument("Partition: classes must be non-negative");
      max_class = std::max(max_class, c);
    }
    classes_ = max_class + 1;
    sizes_.assign(classes_, 0);
    for (int c : assignment_) ++sizes_[c];
    for (int c = 0; c < classes_; ++c) {
      if (sizes_[c] == 0) {
        throw std::invalid_argument("Partition: class " + std::to_string(c) + " is empty");
      }
    }
  }

  // n nodes split into `classes` contiguous intervals, sizes as equal as
  // possible (earlier classes take the remainder).
  static Partition contiguous(int node_count, int classes) {
    if (classes < 1) throw std::invalid_argument("Partition: classes must be positive");
    if (node_count < classes) {
      throw std::invalid_argument("Partition: fewer nodes than classes");
    }
    std::vector<int> assignment(node_count);
    const int base = node_count / classes;
    const int extra = node_count % classes;
    int node = 0;
    for (int c = 0; c < classes; ++c) {
      const int size = base + (c < extra ? 1 : 0);
      for (int i = 0; i < size; ++i) assignment[node++] = c;
    }
    return Partition(node_count, std::move(assignment));
  }

  int nodes() const { return static_cast<int>(assignment_.size()); }
  int classes() const { return classes_; }
  int class_of(int node) const { return assignment_.at(node); }
  int class_size(int c) const { return sizes_.at(c); }
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  std::vector<int> assignment_;
  std::vector<int> sizes_;
  int classes_ = 0;
};

namespace detail {

// Mean edge weight between (or inside) partition classes. Within a class
// the graph diagonal contributes structural zeros; `count_diagonal` decides
// whether those cells enter the average.
inline std::vector<double> class_means(const WeightedGraph& g, const Partition& p,
                                       bool count_diagonal) {
  if (p.nodes() != g.size()) {
    throw std::invalid_argument("coarsen: partition covers " + std::to_string(p.nodes()) +
                                " nodes but the graph has " + std::to_string(g.size()));
  }
  const int m = p.classes();
  // Each unordered node pair is accumulated once so (a, b) and (b, a) share
  // one sum; summing the two directions separately can differ in the last
  // ulp and the quotient matrix must be exactly symmetric.
  std::vector<double> sums(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < g.size(); ++i) {
    const int ci = p.class_of(i);
    const double* row = g.row(i);
    for (int j = i + 1; j < g.size(); ++j) {
      const int cj = p.class_of(j);
      const int lo = ci < cj ? ci : cj;
      const int hi = ci < cj ? cj : ci;
      sums[static_cast<std::size_t>(lo) * m + hi] += row[j];
    }
  }
  std::vector<double> means(static_cast<std::size_t>(m) * m, 0.0);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      double cells = static_cast<double>(p.class_size(a)) * p.class_size(b);
      if (a == b && !count_diagonal) cells -= p.class_size(a);
      if (cells > 0.0) {
        const double total = (a == b ? 2.0 : 1.0) * sums[static_cast<std::size_t>(a) * m + b];
        const double mean = total / cells;
        means[static_cast<std::size_t>(a) * m + b] = mean;
        means[static_cast<std::size_t>(b) * m + a] = mean;
      }
    }
  }
  return means;
}

}  // namespace detail

// Quotient graph: one node per class, edge weight the mean of the original
// weights between the classes. Within a class only off-diagonal pairs are
// averaged (the result keeps a zero diagonal, matching WeightedGraph).
// Singleton classes get weight 0 on their diagonal cell.
inline WeightedGraph coarsen(const WeightedGraph& g, const Partition& p) {
  std::vector<double> means = detail::class_means(g, p, false);
  const int m = p.classes();
  for (int a = 0; a < m; ++a) means[static_cast<std::size_t>(a) * m + a] = 0.0;
  std::vector<std::vector<double>> rows(m, std::vector<double>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) rows[a][b] = means[static_cast<std::size_t>(a) * m + b];
  }
  return WeightedGraph::from_matrix(rows);
}

// Step-graphon quotient: same averaging, but diagonal blocks keep their
// within-class mean (including the structural zeros of the graph diagonal),
// which is the step function obtained by averaging the graph's graphon over
// the partition classes.
inline StepGraphon coarsen_graphon(const WeightedGraph& g, const Partition& p) {
  return StepGraphon(p.classes(), detail::class_means(g, p, true));
}

}  // namespace graphlim
