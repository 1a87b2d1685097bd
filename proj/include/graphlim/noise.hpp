#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "graphlim/rng.hpp"

namespace graphlim {

// Edge-weight distribution attached to a graphon value w. Every family keeps
// mean exactly w and support inside [0, 1]:
//   none            point mass at w
//   bernoulli       weight 1 with probability w
//   beta            Beta(kappa * w, kappa * (1 - w)); point mass when w is 0 or 1
//   bounded_uniform Uniform[w - h', w + h'] with h' = min(h, w, 1 - w)
struct NoiseFamily {
  enum class Kind { none, bernoulli, beta, bounded_uniform };

  Kind kind = Kind::none;
  double kappa = 0.0;  // beta only
  double h = 0.0;      // bounded_uniform only

  static NoiseFamily none() { return {Kind::none, 0.0, 0.0}; }
  static NoiseFamily bernoulli() { return {Kind::bernoulli, 0.0, 0.0}; }

  static NoiseFamily beta(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("NoiseFamily: kappa must be positive");
    return {Kind::beta, kappa, 0.0};
  }

  static NoiseFamily bounded_uniform(double h) {
    if (!(h >= 0.0 && h <= 0.5)) {
      throw std::invalid_argument("NoiseFamily: h must lie in [0, 0.5]");
    }
    return {Kind::bounded_uniform, 0.0, h};
  }

  double sample(Rng& rng, double w) const {
    switch (kind) {
      case Kind::none:
        return w;
      case Kind::bernoulli:
        return rng.bernoulli(w) ? 1.0 : 0.0;
      case Kind::beta: {
        if (w <= 0.0) return 0.0;
        if (w >= 1.0) return 1.0;
        return rng.beta(kappa * w, kappa * (1.0 - w));
      }
      case Kind::bounded_uniform: {
        const double reach = std::min({h, w, 1.0 - w});
        if (reach <= 0.0) return w;
        return rng.uniform(w - reach, w + reach);
      }
    }
    throw std::logic_error("NoiseFamily: unknown kind");
  }

  std::string kind_name() const {
    switch (kind) {
      case Kind::none: return "none";
      case Kind::bernoulli: return "bernoulli";
      case Kind::beta: return "beta";
      case Kind::bounded_uniform: return "bounded_uniform";
    }
    return "?";
  }
};

}  // namespace graphlim
