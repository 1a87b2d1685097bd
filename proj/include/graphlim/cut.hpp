#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/step_graphon.hpp"

namespace graphlim {

// Symmetric step function [0,1]^2 -> [-1,1] on equal blocks. This is the
// signed companion of StepGraphon; differences of graphons live here.
struct StepKernel {
  int m;
  std::vector<double> values;  // m x m row-major, symmetric

  StepKernel(int m_, std::vector<double> values_) : m(m_), values(std::move(values_)) {
    if (m < 1) throw std::invalid_argument("StepKernel: m must be at least 1");
    if (values.size() != static_cast<std::size_t>(m) * m) {
      throw std::invalid_argument("StepKernel: expected " + std::to_string(m * m) + " values");
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < i; ++j) {
        if (at(i, j) != at(j, i)) {
          throw std::invalid_argument("StepKernel: block matrix must be symmetric");
        }
      }
    }
  }

  StepKernel(const StepGraphon& w) : StepKernel(w.blocks(), w.values()) {}  // NOLINT

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * m + j]; }
};

// Pointwise difference on the common refinement of the two block structures.
inline StepKernel kernel_difference(const StepGraphon& a, const StepGraphon& b) {
  const int m = std::lcm(a.blocks(), b.blocks());
  const StepGraphon ra = a.refine(m / a.blocks());
  const StepGraphon rb = b.refine(m / b.blocks());
  std::vector<double> diff(static_cast<std::size_t>(m) * m);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ra.values()[i] - rb.values()[i];
  return StepKernel(m, std::move(diff));
}

// Exact cut norm of a step kernel:
//
//   sup_{A,B subsets of [0,1]} | integral over A x B |
//
// For a step function the supremum is attained at unions of blocks (the
// objective is multilinear in per-block inclusion fractions), so it suffices
// to enumerate row subsets A; for fixed A the best B keeps exactly the
// columns whose A-sum is positive (or exactly the negative ones). Subsets
// are visited in Gray-code order so each step updates the column sums in
// O(m). Total cost O(2^m * m), hence the hard cap on m.
inline double cut_norm(const StepKernel& s) {
  const int m = s.m;
  if (m > 16) {
    throw std::length_error("cut_norm: " + std::to_string(m) +
                            " blocks would need 2^" + std::to_string(m) +
                            " subset evaluations; supported only for m <= 16");
  }
  const double inv = 1.0 / (static_cast<double>(m) * m);
  std::vector<double> colsum(m, 0.0);
  double best = 0.0;
  const std::uint32_t total = 1u << m;
  std::uint32_t gray = 0;
  for (std::uint32_t step = 1; step < total; ++step) {
    const std::uint32_t next = step ^ (step >> 1);
    const std::uint32_t changed = gray ^ next;
    const int row = std::countr_zero(changed);
    const double sign = (next & changed) ? 1.0 : -1.0;
    for (int j = 0; j < m; ++j) colsum[j] += sign * s.at(row, j);
    gray = next;
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < m; ++j) {
      if (colsum[j] > 0.0) pos += colsum[j];
      else neg += colsum[j];
    }
    best = std::max(best, std::max(pos, -neg) * inv);
  }
  return best;
}

inline double cut_norm(const StepGraphon& w) { return cut_norm(StepKernel(w)); }

// Upper bound on the cut distance between two step graphons with the same
// number of blocks: minimum over block relabelings of the cut norm of the
// difference. Block permutations are a subset of all measure-preserving
// maps, hence an upper bound (tight when the optimum respects the grid).
inline double cut_distance_upper(const StepGraphon& a, const StepGraphon& b) {
  if (a.blocks() != b.blocks()) {
    throw std::invalid_argument("cut_distance_upper: graphons must have the same block count");
  }
  const int m = a.blocks();
  if (m > 8) {
    throw std::length_error("cut_distance_upper: " + std::to_string(m) +
                            "! block permutations is too many; supported only for m <= 8");
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> diff(static_cast<std::size_t>(m) * m);
  do {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        diff[static_cast<std::size_t>(i) * m + j] = a.value(i, j) - b.value(perm[i], perm[j]);
      }
    }
    best = std::min(best, cut_norm(StepKernel(m, diff)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace graphlim
