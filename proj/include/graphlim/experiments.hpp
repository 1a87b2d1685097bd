#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/bounds.hpp"
#include "graphlim/decorated_graphon.hpp"
#include "graphlim/hom.hpp"
#include "graphlim/motif.hpp"
#include "graphlim/point_measure.hpp"
#include "graphlim/transport.hpp"

namespace graphlim {

// Certified range for a per-trial deviation |t(F, G) - t(F, W)|. Trials
// evaluated exactly have lo == hi.
struct DeviationInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ConcentrationCell {
  double eps = 0.0;
  double exceedance_rate = 0.0;
  double probability_bound = 0.0;  // 2 exp(-k eps^2 / (2 v^2)), v = motif vertices
};

struct ConcentrationReport {
  Motif motif = Motif::edge();
  double reference = 0.0;             // t(F, W) for the expectation graphon
  std::vector<double> statistic;      // per-trial deviation (midpoint when enclosed)
  std::vector<DeviationInterval> certified;
  std::vector<ConcentrationCell> cells;
};

namespace detail {

inline double concentration_probability_bound(double k, double eps, int v) {
  return 2.0 * std::exp(-k * eps * eps / (2.0 * static_cast<double>(v) * v));
}

inline DeviationInterval deviation_interval(double t_lo, double t_hi, double reference) {
  if (reference < t_lo) return {t_lo - reference, t_hi - reference};
  if (reference > t_hi) return {reference - t_hi, reference - t_lo};
  return {0.0, std::max(t_hi - reference, reference - t_lo)};
}

// Latent draws shared by every trial-evaluation strategy. Draw order (k
// latent uniforms, then the upper triangle row by row through the noise
// family) matches sample_graph exactly, so all strategies see the same
// graph for the same stream.
struct TrialLatents {
  std::vector<double> u;
  std::vector<int> block;
};

inline TrialLatents draw_latents(const DecoratedGraphon& d, int k, Rng& rng) {
  TrialLatents latents;
  latents.u = sample_latents(d, k, rng);
  latents.block.resize(k);
  for (int i = 0; i < k; ++i) latents.block[i] = d.expectation.block_of(latents.u[i]);
  return latents;
}

// Streamed statistics of one sampled graph that is never materialized.
// Always accumulates the exact mean edge weight; when `want_triangle` is
// set, also accumulates the block decomposition A = M + E (M the expected
// weight given the latents, E the centered noise) that encloses trace(A^3):
//
//   trace(A^3) = trace(M^3) + 3 trace(M^2 E) + 3 trace(M E^2) + trace(E^3)
//
// The first three terms involve E at most quadratically and reduce to block
// sums, so they are computed exactly in O(k^2 m) during the pass. The last
// term is only bounded: |trace(E^3)| = |sum of eigenvalue cubes| is at most
// ||E||_2 ||E||_F^2 <= ||E||_F^3, and ||E||_F is accumulated exactly. The
// result is a certified interval for the triangle density.
struct StreamedTrial {
  double edge_density = 0.0;
  bool has_triangle = false;
  double triangle_lo = 0.0;
  double triangle_hi = 0.0;
};

inline StreamedTrial stream_trial(const DecoratedGraphon& d, int k, Rng& rng,
                                  bool want_triangle) {
  const TrialLatents latents = draw_latents(d, k, rng);
  const int m = d.expectation.blocks();
  const std::vector<double>& v = d.expectation.values();
  const int* block = latents.block.data();

  double wsum = 0.0;
  std::vector<double> esum;        // m x m ordered-pair sums of E
  std::vector<double> es;          // k x m row sums of E by column block
  std::vector<double> rowsq;       // per-row sum of E^2
  std::vector<std::int64_t> nb;    // block occupancy
  double sumsq = 0.0;
  if (want_triangle) {
    esum.assign(static_cast<std::size_t>(m) * m, 0.0);
    es.assign(static_cast<std::size_t>(k) * m, 0.0);
    rowsq.assign(k, 0.0);
    nb.assign(m, 0);
    for (int i = 0; i < k; ++i) ++nb[block[i]];
  }

  for (int i = 0; i < k; ++i) {
    const int bi = block[i];
    const double* vrow = &v[static_cast<std::size_t>(bi) * m];
    for (int j = i + 1; j < k; ++j) {
      const int bj = block[j];
      const double mean = vrow[bj];
      const double w = d.noise.sample(rng, mean);
      wsum += w;
      if (want_triangle) {
        const double e = w - mean;
        esum[static_cast<std::size_t>(bi) * m + bj] += e;
        esum[static_cast<std::size_t>(bj) * m + bi] += e;
        es[static_cast<std::size_t>(i) * m + bj] += e;
        es[static_cast<std::size_t>(j) * m + bi] += e;
        const double e2 = e * e;
        rowsq[i] += e2;
        rowsq[j] += e2;
        sumsq += 2.0 * e2;
      }
    }
  }

  StreamedTrial out;
  const double kd = static_cast<double>(k);
  out.edge_density = 2.0 * wsum / (kd * kd);
  if (!want_triangle) return out;

  // Exact part of trace(A^3) from m x m block algebra.
  const auto vat = [&](int a, int b) { return v[static_cast<std::size_t>(a) * m + b]; };
  std::vector<double> vn(static_cast<std::size_t>(m) * m);  // V * diag(nb)
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      vn[static_cast<std::size_t>(a) * m + b] = vat(a, b) * static_cast<double>(nb[b]);
    }
  }
  std::vector<double> vn2(static_cast<std::size_t>(m) * m, 0.0);  // (VN)^2
  for (int a = 0; a < m; ++a) {
    for (int l = 0; l < m; ++l) {
      const double x = vn[static_cast<std::size_t>(a) * m + l];
      if (x == 0.0) continue;
      for (int b = 0; b < m; ++b) {
        vn2[static_cast<std::size_t>(a) * m + b] += x * vn[static_cast<std::size_t>(l) * m + b];
      }
    }
  }
  double tr_m3 = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int l = 0; l < m; ++l) {
      tr_m3 += vn2[static_cast<std::size_t>(a) * m + l] * vn[static_cast<std::size_t>(l) * m + a];
    }
  }
  // tr((VN)^3) computed above counts diagonal blocks fully; subtract the
  // diagonal corrections for the zero graph diagonal.
  std::vector<double> vnv(static_cast<std::size_t>(m) * m, 0.0);  // V N V
  for (int a = 0; a < m; ++a) {
    for (int l = 0; l < m; ++l) {
      const double x = vn[static_cast<std::size_t>(a) * m + l];
      if (x == 0.0) continue;
      for (int b = 0; b < m; ++b) {
        vnv[static_cast<std::size_t>(a) * m + b] += x * vat(l, b);
      }
    }
  }
  for (int b = 0; b < m; ++b) {
    const double vbb = vat(b, b);
    tr_m3 -= 3.0 * static_cast<double>(nb[b]) * vnv[static_cast<std::size_t>(b) * m + b] * vbb;
    tr_m3 += 2.0 * static_cast<double>(nb[b]) * vbb * vbb * vbb;
  }

  double tr_m2e = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double coeff = vnv[static_cast<std::size_t>(a) * m + b] -
                           vat(a, b) * (vat(a, a) + vat(b, b));
      tr_m2e += coeff * esum[static_cast<std::size_t>(a) * m + b];
    }
  }

  double tr_me2 = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      double t_ab = 0.0;
      for (int i = 0; i < k; ++i) {
        t_ab += es[static_cast<std::size_t>(i) * m + a] * es[static_cast<std::size_t>(i) * m + b];
      }
      tr_me2 += (a == b ? 1.0 : 2.0) * vat(a, b) * t_ab;
    }
  }
  for (int i = 0; i < k; ++i) {
    const int b = block[i];
    tr_me2 -= vat(b, b) * rowsq[i];
  }

  const double base = tr_m3 + 3.0 * tr_m2e + 3.0 * tr_me2;
  const double slack = std::pow(sumsq, 1.5);
  const double k3 = kd * kd * kd;
  out.has_triangle = true;
  out.triangle_lo = (base - slack) / k3;
  out.triangle_hi = (base + slack) / k3;
  return out;
}

// Bit-packed exact evaluation for Bernoulli noise: edge density from the
// edge count, triangle density from popcount intersections.
struct BitsetTrial {
  double edge_density = 0.0;
  double triangle_density = 0.0;
};

inline BitsetTrial bitset_trial(const DecoratedGraphon& d, int k, Rng& rng, bool want_triangle) {
  const TrialLatents latents = draw_latents(d, k, rng);
  const int m = d.expectation.blocks();
  const std::vector<double>& v = d.expectation.values();
  const int* block = latents.block.data();
  const int words = (k + 63) / 64;

  std::vector<std::uint64_t> rows;
  if (want_triangle) rows.assign(static_cast<std::size_t>(k) * words, 0);
  std::int64_t edges = 0;
  for (int i = 0; i < k; ++i) {
    const double* vrow = &v[static_cast<std::size_t>(block[i]) * m];
    for (int j = i + 1; j < k; ++j) {
      const double w = d.noise.sample(rng, vrow[block[j]]);
      if (w != 0.0) {
        ++edges;
        if (want_triangle) {
          rows[static_cast<std::size_t>(i) * words + (j >> 6)] |= 1ULL << (j & 63);
          rows[static_cast<std::size_t>(j) * words + (i >> 6)] |= 1ULL << (i & 63);
        }
      }
    }
  }

  BitsetTrial out;
  const double kd = static_cast<double>(k);
  out.edge_density = 2.0 * static_cast<double>(edges) / (kd * kd);
  if (!want_triangle) return out;

  // Ordered triangles i < j < l with all three edges present.
  std::int64_t triangles = 0;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t* ri = &rows[static_cast<std::size_t>(i) * words];
    for (int wj = i >> 6; wj < words; ++wj) {
      std::uint64_t bits = ri[wj];
      if (wj == (i >> 6)) bits &= ~((2ULL << (i & 63)) - 1);  // keep j > i
      while (bits) {
        const int j = (wj << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* rj = &rows[static_cast<std::size_t>(j) * words];
        const int start = (j + 1) >> 6;
        std::uint64_t first_mask = ~0ULL << ((j + 1) & 63);
        if (((j + 1) & 63) == 0) first_mask = ~0ULL;
        std::int64_t acc = 0;
        if (start < words) {
          acc += std::popcount(ri[start] & rj[start] & first_mask);
          for (int w = start + 1; w < words; ++w) acc += std::popcount(ri[w] & rj[w]);
        }
        triangles += acc;
      }
    }
  }
  out.triangle_density = 6.0 * static_cast<double>(triangles) / (kd * kd * kd);
  return out;
}

// Exact dense triangle density for one trial, re-deriving the same stream.
// Only used when an enclosure straddles the threshold; cubic cost, blocked
// to keep the working set bounded.
inline double dense_triangle_density(const DecoratedGraphon& d, int k, Rng rng) {
  const TrialLatents latents = draw_latents(d, k, rng);
  const int m = d.expectation.blocks();
  const std::vector<double>& v = d.expectation.values();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    const double* vrow = &v[static_cast<std::size_t>(latents.block[i]) * m];
    for (int j = i + 1; j < k; ++j) {
      const double w = d.noise.sample(rng, vrow[latents.block[j]]);
      a(i, j) = w;
      a(j, i) = w;
    }
  }
  double trace = 0.0;
  const int chunk = 256;
  for (int j0 = 0; j0 < k; j0 += chunk) {
    const int width = std::min(chunk, k - j0);
    const Eigen::MatrixXd c = a * a.middleCols(j0, width);
    trace += (c.array() * a.middleCols(j0, width).array()).sum();
  }
  const double kd = static_cast<double>(k);
  return trace / (kd * kd * kd);
}

inline bool is_triangle(const Motif& f) { return f.v == 3 && f.is_cycle(); }
inline bool is_edge(const Motif& f) { return f.v == 2 && f.edge_count() == 1; }

}  // namespace detail

// Monte Carlo check of the density concentration inequality: samples
// `trials` graphs from the decorated graphon, and for each motif and each
// threshold reports the fraction of trials with |t(F, G) - t(F, W)| >= eps
// next to the bound 2 exp(-k eps^2 / (2 v^2)).
//
// All motifs share the same sampled graphs (one pass). Graphs with k up to
// `materialize_limit` are materialized and evaluated exactly; beyond that
// only edge and triangle motifs are supported, evaluated by streaming. The
// streamed triangle value for non-Bernoulli noise is a certified enclosure;
// trials whose enclosure straddles a threshold are re-evaluated densely, so
// reported rates are exact for every noise family.
inline std::vector<ConcentrationReport> concentration_experiment_multi(
    const DecoratedGraphon& d, int k, const std::vector<Motif>& motifs,
    const std::vector<double>& epses, int trials, std::uint64_t seed,
    int materialize_limit = 1024) {
  if (motifs.empty()) throw std::invalid_argument("concentration: needs at least one motif");
  if (epses.empty()) throw std::invalid_argument("concentration: needs at least one threshold");
  if (trials < 1) throw std::invalid_argument("concentration: trials must be positive");
  if (k < 1) throw std::invalid_argument("concentration: k must be positive");
  for (double eps : epses) {
    if (!(eps > 0.0)) throw std::invalid_argument("concentration: thresholds must be positive");
  }

  const bool stream = k > materialize_limit;
  bool want_triangle = false;
  if (stream) {
    for (const auto& f : motifs) {
      if (detail::is_triangle(f)) {
        want_triangle = true;
      } else if (!detail::is_edge(f)) {
        throw std::length_error(
            "concentration: k = " + std::to_string(k) +
            " is beyond the materialization limit, where only edge and triangle motifs "
            "are supported");
      }
    }
  }

  std::vector<ConcentrationReport> reports;
  reports.reserve(motifs.size());
  for (const auto& f : motifs) {
    ConcentrationReport r;
    r.motif = f;
    r.reference = hom_density_graphon(f, d.expectation);
    r.statistic.resize(trials);
    r.certified.resize(trials);
    reports.push_back(std::move(r));
  }

  const bool bernoulli = d.noise.kind == NoiseFamily::Kind::bernoulli;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(trial));
    if (!stream) {
      const WeightedGraph g = sample_graph(d, k, rng);
      for (auto& r : reports) {
        const double t = motif_density(r.motif, g);
        const double dev = std::fabs(t - r.reference);
        r.statistic[trial] = dev;
        r.certified[trial] = {dev, dev};
      }
    } else if (bernoulli) {
      const detail::BitsetTrial t = detail::bitset_trial(d, k, rng, want_triangle);
      for (auto& r : reports) {
        const double x = detail::is_edge(r.motif) ? t.edge_density : t.triangle_density;
        const double dev = std::fabs(x - r.reference);
        r.statistic[trial] = dev;
        r.certified[trial] = {dev, dev};
      }
    } else {
      const detail::StreamedTrial t = detail::stream_trial(d, k, rng, want_triangle);
      for (auto& r : reports) {
        if (detail::is_edge(r.motif)) {
          const double dev = std::fabs(t.edge_density - r.reference);
          r.statistic[trial] = dev;
          r.certified[trial] = {dev, dev};
        } else {
          const DeviationInterval dev =
              detail::deviation_interval(t.triangle_lo, t.triangle_hi, r.reference);
          r.statistic[trial] = 0.5 * (dev.lo + dev.hi);
          r.certified[trial] = dev;
        }
      }
    }
  }

  for (auto& r : reports) {
    for (double eps : epses) {
      int exceed = 0;
      for (int trial = 0; trial < trials; ++trial) {
        DeviationInterval& dev = r.certified[trial];
        if (dev.lo < eps && eps <= dev.hi) {
          // Enclosure cannot decide this threshold; settle the trial exactly.
          const double t = detail::dense_triangle_density(
              d, k, Rng::derive(seed, static_cast<std::uint64_t>(trial)));
          const double exact_dev = std::fabs(t - r.reference);
          dev = {exact_dev, exact_dev};
          r.statistic[trial] = exact_dev;
        }
        if (dev.lo >= eps) ++exceed;
      }
      ConcentrationCell cell;
      cell.eps = eps;
      cell.exceedance_rate = static_cast<double>(exceed) / trials;
      cell.probability_bound =
          detail::concentration_probability_bound(static_cast<double>(k), eps, r.motif.v);
      r.cells.push_back(cell);
    }
  }
  return reports;
}

inline ConcentrationReport concentration_experiment(const DecoratedGraphon& d, const Motif& f,
                                                    int k, double eps, int trials,
                                                    std::uint64_t seed,
                                                    int materialize_limit = 1024) {
  return concentration_experiment_multi(d, k, {f}, {eps}, trials, seed, materialize_limit)[0];
}

// Monte Carlo check of the empirical-measure convergence rate on [0, 1]:
// mean exact Wasserstein distance between an n-point empirical measure of
// Uniform[0,1] and Uniform[0,1] itself, against the bound 3.6462 n^{-1/3}.
struct MeanWassersteinResult {
  std::vector<double> per_trial;
  double mean = 0.0;
  double bound = 0.0;
};

inline MeanWassersteinResult mean_wasserstein_experiment(int n, int trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mean_wasserstein_experiment: n must be positive");
  if (trials < 1) throw std::invalid_argument("mean_wasserstein_experiment: trials must be positive");
  MeanWassersteinResult result;
  result.per_trial.reserve(trials);
  std::vector<double> values(n);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(trial));
    for (int i = 0; i < n; ++i) values[i] = rng.u01();
    const double w1 = wasserstein_1d_vs_uniform(PointMeasure::uniform_on(values));
    result.per_trial.push_back(w1);
    result.mean += w1;
  }
  result.mean /= trials;
  result.bound = 3.6462 * std::pow(static_cast<double>(n), -1.0 / 3.0);
  return result;
}

// Two-group motif separation test at ensemble sizes too large to hold in
// memory: graphs are sampled, reduced to their motif density, and discarded.
// Group 1 uses streams (seed, 0..n1-1), group 2 (seed, n1..n1+n2-1).
// Restricted to edge motifs, whose density is a plain running mean of the
// sampled weights; anything larger should go through equality_test_motif.
inline SeparationReport streamed_edge_equality_test(const DecoratedGraphon& d1,
                                                    const DecoratedGraphon& d2, int k,
                                                    std::int64_t n1, std::int64_t n2, double c,
                                                    double threshold, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("streamed_edge_equality_test: k must be positive");
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("streamed_edge_equality_test: group sizes must be positive");
  }
  const double kd = static_cast<double>(k);
  const auto group_densities = [&](const DecoratedGraphon& d, std::int64_t count,
                                   std::int64_t first_stream) {
    std::vector<double> densities(count);
    const int m = d.expectation.blocks();
    const std::vector<double>& v = d.expectation.values();
    std::vector<int> block(k);
    for (std::int64_t g = 0; g < count; ++g) {
      Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(first_stream + g));
      for (int i = 0; i < k; ++i) block[i] = d.expectation.block_of(rng.u01());
      double wsum = 0.0;
      for (int i = 0; i < k; ++i) {
        const double* vrow = &v[static_cast<std::size_t>(block[i]) * m];
        for (int j = i + 1; j < k; ++j) wsum += d.noise.sample(rng, vrow[block[j]]);
      }
      densities[g] = 2.0 * wsum / (kd * kd);
    }
    return densities;
  };

  std::vector<double> t1 = group_densities(d1, n1, 0);
  std::vector<double> t2 = group_densities(d2, n2, n1);
  std::sort(t1.begin(), t1.end());
  std::sort(t2.begin(), t2.end());

  SeparationReport report;
  report.mode = "motif";
  report.k = kd;
  report.c = c;
  report.n1 = static_cast<double>(n1);
  report.n2 = static_cast<double>(n2);
  report.motif_edges = 1;

  if (n1 == n2) {
    double dist = 0.0;
    for (std::int64_t i = 0; i < n1; ++i) dist += std::fabs(t1[i] - t2[i]);
    report.distance = dist / static_cast<double>(n1);
    report.bound = thm1_bound(report.distance, 1, report.n1);
    report.confidence = thm1_confidence(report.k, report.n1, 1, c);
  } else {
    report.distance =
        wasserstein_1d(PointMeasure::uniform_on(t1), PointMeasure::uniform_on(t2));
    report.bound = hetero_thm1_bound(report.distance, 1, report.n1, report.n2);
    report.confidence = hetero_thm1_confidence(report.k, report.n1, report.n2, 1, c);
  }
  detail::finish_verdict(report, threshold);
  return report;
}

}  // namespace graphlim
