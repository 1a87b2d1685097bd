#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/noise.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/step_graphon.hpp"
#include "graphlim/weighted_graph.hpp"

namespace graphlim {

// Graphon together with an edge-weight noise family. The expectation graphon
// gives the mean weight for every pair of latent positions; the noise family
// gives the distribution of the observed weight around that mean.
struct DecoratedGraphon {
  StepGraphon expectation;
  NoiseFamily noise;

  DecoratedGraphon(StepGraphon w, NoiseFamily f) : expectation(std::move(w)), noise(f) {}

  static DecoratedGraphon exact(StepGraphon w) {
    return DecoratedGraphon(std::move(w), NoiseFamily::none());
  }
};

// Draw order is fixed: k latent uniforms first, then the upper triangle row
// by row. Any change here silently changes all recorded outputs.
inline std::vector<double> sample_latents(const DecoratedGraphon&, int k, Rng& rng) {
  std::vector<double> u(k);
  for (int i = 0; i < k; ++i) u[i] = rng.u01();
  return u;
}

inline WeightedGraph sample_graph(const DecoratedGraphon& d, int k, Rng& rng) {
  const std::vector<double> u = sample_latents(d, k, rng);
  std::vector<int> block(k);
  for (int i = 0; i < k; ++i) block[i] = d.expectation.block_of(u[i]);
  WeightedGraph g(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double mean = d.expectation.value(block[i], block[j]);
      g.set_weight(i, j, d.noise.sample(rng, mean));
    }
  }
  return g;
}

inline WeightedGraph sample_graph(const DecoratedGraphon& d, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_graph(d, k, rng);
}

// Graph i of an ensemble uses the derived stream (seed, i), so ensembles are
// reproducible independent of sampling order.
inline std::vector<WeightedGraph> sample_ensemble(const DecoratedGraphon& d, int k, int n,
                                                  std::uint64_t seed) {
  std::vector<WeightedGraph> graphs;
  graphs.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    graphs.push_back(sample_graph(d, k, rng));
  }
  return graphs;
}

}  // namespace graphlim
