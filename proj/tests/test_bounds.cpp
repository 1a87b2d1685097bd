#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <graphlim/bounds.hpp>
#include <graphlim/decorated_graphon.hpp>
#include <graphlim/motif.hpp>
#include <graphlim/rng.hpp>

using namespace graphlim;
using Catch::Matchers::WithinAbs;

TEST_CASE("motif-route bound at the reference points") {
  REQUIRE_THAT(thm1_bound(0.6, 1, 1e6), WithinAbs(0.51, 1e-12));
  REQUIRE_THAT(thm1_bound(0.6, 1, 1e3), WithinAbs(-0.3, 1e-12));
  REQUIRE_THAT(thm1_bound(0.0, 1, 1e3), WithinAbs(-0.9, 1e-12));
  REQUIRE_THAT(thm1_bound(0.6, 3, 1e6), WithinAbs(0.17, 1e-12));
}

TEST_CASE("motif-route bound validation") {
  REQUIRE_THROWS_AS(thm1_bound(0.5, 0, 1e3), std::invalid_argument);
  REQUIRE_THROWS_AS(thm1_bound(0.5, 1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(thm1_confidence(100.0, 100.0, 1, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(thm1_confidence(0.0, 100.0, 1, 1.0), std::invalid_argument);
}

TEST_CASE("motif-route confidence saturates at the extremes") {
  REQUIRE(thm1_confidence(1e6, 1e6, 1, 1.0) >= 1.0 - 1e-12);
  REQUIRE(thm1_confidence(1.0, 1.0, 1, 1.0) == 0.0);
  const double mid = thm1_confidence(1e4, 1e3, 1, 1.0);
  REQUIRE(mid > 0.0);
  REQUIRE(mid < 1.0);
  const double expected =
      1.0 - 2.0 * std::exp(-1e4 * std::pow(1e3, -2.0 / 3.0) / 2.0) -
      2.0 * std::exp(-0.09 * std::pow(1e3, 2.0 / 3.0));
  REQUIRE_THAT(mid, WithinAbs(expected, 1e-15));
}

TEST_CASE("spectral-route bound at the reference point") {
  REQUIRE_THAT(thm2_bound(1.5, 3, 1e30), WithinAbs(5.107e-5, 1e-8));
}

TEST_CASE("spectral-route bound stays finite for large v") {
  for (int v = 1; v <= 60; ++v) {
    const double b = thm2_bound(1.9, v, 1e6);
    REQUIRE(std::isfinite(b));
  }
}

TEST_CASE("spectral-route confidence is nonincreasing in v") {
  double prev = 2.0;
  for (int v = 1; v <= 20; ++v) {
    const double conf = thm2_confidence(1e5, 1e4, v, 1.0);
    REQUIRE(conf <= prev + 1e-15);
    prev = conf;
  }
}

TEST_CASE("bounds are monotone in distance and group size") {
  double prev = -10.0;
  for (double dist : {0.0, 0.2, 0.4, 0.8, 1.6}) {
    const double b = thm1_bound(dist, 2, 1e4);
    REQUIRE(b > prev);
    prev = b;
  }
  prev = -10.0;
  for (double n : {1e1, 1e2, 1e4, 1e8}) {
    const double b = thm1_bound(0.5, 2, n);
    REQUIRE(b > prev);
    prev = b;
    REQUIRE(thm2_bound(0.5, 2, n) >= thm2_bound(0.5, 2, n / 2.0));
  }
}

TEST_CASE("two-group-size bound at the reference point") {
  REQUIRE_THAT(hetero_thm1_bound(1.0, 2, 1e6, 1e6), WithinAbs(0.45, 1e-12));
  REQUIRE(hetero_thm1_bound(1.0, 2, 1e6, 1e3) < 0.45);
  REQUIRE_THROWS_AS(hetero_thm1_bound(1.0, 0, 1e6, 1e6), std::invalid_argument);
}

TEST_CASE("two-group-size confidences match the equal-size ones at equal n") {
  const double equal = thm1_confidence(1e4, 1e3, 2, 1.0);
  const double hetero = hetero_thm1_confidence(1e4, 1e3, 1e3, 2, 1.0);
  REQUIRE_THAT(hetero, WithinAbs(equal, 1e-15));
  const double equal2 = thm2_confidence(1e4, 1e3, 3, 1.0);
  const double hetero2 = hetero_thm2_confidence(1e4, 1e3, 1e3, 3, 1.0);
  REQUIRE_THAT(hetero2, WithinAbs(equal2, 1e-15));
}

TEST_CASE("two-group-size spectral bound degrades with the smaller group") {
  const double balanced = hetero_thm2_bound(1.5, 2, 1e9, 1e9);
  const double lopsided = hetero_thm2_bound(1.5, 2, 1e9, 1e3);
  REQUIRE(lopsided < balanced);
}

TEST_CASE("identical groups are inconclusive") {
  const DecoratedGraphon d{StepGraphon::constant(0.5), NoiseFamily::bernoulli()};
  const std::vector<WeightedGraph> group = sample_ensemble(d, 30, 8, 5);
  const SeparationReport report = equality_test_motif(group, group, Motif::edge(), 1.0, 0.9);
  REQUIRE(report.mode == "motif");
  REQUIRE_THAT(report.distance, WithinAbs(0.0, 1e-15));
  REQUIRE(report.bound < 0.0);
  REQUIRE_FALSE(report.distinct());
  REQUIRE(report.verdict == "inconclusive");
}

TEST_CASE("motif-route test fills the report consistently") {
  const DecoratedGraphon lo{StepGraphon::constant(0.1), NoiseFamily::bernoulli()};
  const DecoratedGraphon hi{StepGraphon::constant(0.9), NoiseFamily::bernoulli()};
  const std::vector<WeightedGraph> g1 = sample_ensemble(lo, 40, 6, 1);
  const std::vector<WeightedGraph> g2 = sample_ensemble(hi, 40, 6, 2);
  const SeparationReport report = equality_test_motif(g1, g2, Motif::edge(), 1.0, 0.9);
  REQUIRE(report.motif_edges == 1);
  REQUIRE(report.n1 == 6.0);
  REQUIRE(report.n2 == 6.0);
  REQUIRE(report.k == 40.0);
  REQUIRE(report.c == 1.0);
  REQUIRE(report.distance > 0.5);
  REQUIRE_THAT(report.bound, WithinAbs(thm1_bound(report.distance, 1, 6.0), 1e-15));
  REQUIRE_THAT(report.confidence, WithinAbs(thm1_confidence(40.0, 6.0, 1, 1.0), 1e-15));
  // At n = 6 the finite-sample term exceeds any possible distance, so the
  // verdict must be inconclusive no matter how far apart the graphons are.
  REQUIRE(report.bound < 0.0);
  REQUIRE_FALSE(report.distinct());
}

TEST_CASE("unequal group sizes use the two-size route") {
  const DecoratedGraphon lo{StepGraphon::constant(0.2), NoiseFamily::bernoulli()};
  const DecoratedGraphon hi{StepGraphon::constant(0.8), NoiseFamily::bernoulli()};
  const std::vector<WeightedGraph> g1 = sample_ensemble(lo, 30, 4, 3);
  const std::vector<WeightedGraph> g2 = sample_ensemble(hi, 30, 7, 4);
  const SeparationReport report = equality_test_motif(g1, g2, Motif::edge(), 1.0, 0.9);
  REQUIRE_THAT(report.bound, WithinAbs(hetero_thm1_bound(report.distance, 1, 4.0, 7.0), 1e-15));
  REQUIRE_THAT(report.confidence,
               WithinAbs(hetero_thm1_confidence(30.0, 4.0, 7.0, 1, 1.0), 1e-15));
}

TEST_CASE("spectral test reports the moment order attaining the bound") {
  const DecoratedGraphon lo{StepGraphon::constant(0.1), NoiseFamily::bernoulli()};
  const DecoratedGraphon hi{StepGraphon::constant(0.9), NoiseFamily::bernoulli()};
  const std::vector<WeightedGraph> g1 = sample_ensemble(lo, 30, 5, 5);
  const std::vector<WeightedGraph> g2 = sample_ensemble(hi, 30, 5, 6);
  const SeparationReport report = equality_test_spectral(g1, g2, 1.0, 0.9);
  REQUIRE(report.mode == "spectral");
  REQUIRE(report.v >= 1);
  REQUIRE(report.v <= 8);
  REQUIRE_THAT(report.bound, WithinAbs(thm2_bound(report.distance, report.v, 5.0), 1e-15));
  for (int v = 1; v <= 8; ++v) {
    REQUIRE(report.bound >= thm2_bound(report.distance, v, 5.0) - 1e-15);
  }
  REQUIRE_THAT(report.confidence, WithinAbs(thm2_confidence(30.0, 5.0, report.v, 1.0), 1e-15));
}

TEST_CASE("group validation in the separation tests") {
  const DecoratedGraphon d{StepGraphon::constant(0.5), NoiseFamily::bernoulli()};
  const std::vector<WeightedGraph> a = sample_ensemble(d, 20, 3, 7);
  const std::vector<WeightedGraph> b = sample_ensemble(d, 25, 3, 8);
  REQUIRE_THROWS_AS(equality_test_motif(a, b, Motif::edge(), 1.0, 0.9), std::invalid_argument);
  REQUIRE_THROWS_AS(equality_test_motif({}, a, Motif::edge(), 1.0, 0.9), std::invalid_argument);
  REQUIRE_THROWS_AS(equality_test_motif(a, a, Motif(3, {}), 1.0, 0.9), std::invalid_argument);
  REQUIRE_THROWS_AS(equality_test_spectral(a, b, 1.0, 0.9), std::invalid_argument);
  REQUIRE_THROWS_AS(equality_test_spectral(a, a, 1.0, 0.9, 0), std::invalid_argument);
}

// Soundness: the reported bound never exceeds the true cut distance. For
// constant graphons p and q the cut distance is |p - q|.
TEST_CASE("motif-route bound never exceeds the true cut distance") {
  const double p = 0.2, q = 0.7;
  const DecoratedGraphon dp{StepGraphon::constant(p), NoiseFamily::bernoulli()};
  const DecoratedGraphon dq{StepGraphon::constant(q), NoiseFamily::bernoulli()};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::vector<WeightedGraph> g1 = sample_ensemble(dp, 30, 10, 2 * seed);
    const std::vector<WeightedGraph> g2 = sample_ensemble(dq, 30, 10, 2 * seed + 1);
    const SeparationReport report = equality_test_motif(g1, g2, Motif::edge(), 1.0, 0.5);
    REQUIRE(report.bound <= std::fabs(p - q) + 1e-9);
  }
}

TEST_CASE("null runs with a positive bound stay within the confidence slack") {
  const DecoratedGraphon d{StepGraphon::constant(0.5), NoiseFamily::bernoulli()};
  int positive = 0;
  double confidence = 1.0;
  const int runs = 100;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    const std::vector<WeightedGraph> g1 = sample_ensemble(d, 25, 8, 1000 + 2 * seed);
    const std::vector<WeightedGraph> g2 = sample_ensemble(d, 25, 8, 1001 + 2 * seed);
    const SeparationReport report = equality_test_motif(g1, g2, Motif::edge(), 1.0, 0.5);
    positive += report.bound > 0.0 ? 1 : 0;
    confidence = report.confidence;
  }
  REQUIRE(static_cast<double>(positive) / runs <= 1.0 - confidence + 0.05);
}
