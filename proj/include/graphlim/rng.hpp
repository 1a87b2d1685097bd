#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace graphlim {

// Deterministic random source built on xoshiro256++ with splitmix64 seeding.
// Every sampling routine in the library draws through this class so that a
// (seed, stream index) pair fully determines the output on a given platform.
// Distribution samplers are implemented here rather than taken from
// <random> because the standard leaves their algorithms unspecified, which
// would make recorded outputs compiler-dependent.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  // Independent child stream; used for per-graph / per-trial substreams so
  // results do not depend on evaluation order.
  Rng stream(std::uint64_t index) const {
    Rng child(0);
    std::uint64_t x = state_[0] ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    std::uint64_t y = state_[2] ^ (0xbf58476d1ce4e5b9ULL + index);
    child.state_[0] = splitmix64(x);
    child.state_[1] = splitmix64(y);
    child.state_[2] = splitmix64(x);
    child.state_[3] = splitmix64(y);
    return child;
  }

  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed).stream(index);
  }

  std::uint64_t u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  std::uint64_t operator()() { return u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform on [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(u64()) < p * 0x1.0p64;
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = u64();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal, Marsaglia polar method with one cached value.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Gamma(shape, 1) via Marsaglia-Tsang, with the power boost for shape < 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
      const double boost = std::pow(u01(), 1.0 / shape);
      return gamma(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x2 + d - d * v + d * std::log(v)) return d * v;
    }
  }

  double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("Rng::beta: shapes must be positive");
    const double ga = gamma(a);
    const double gb = gamma(b);
    const double sum = ga + gb;
    if (sum == 0.0) return 0.5;
    return ga / sum;
  }

  // Fisher-Yates; std::shuffle is avoided because its draw pattern is
  // implementation-defined.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace graphlim
