#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphlim {

// Finite atomic measure on [-1, 1]. Spectra, degree measures, and empirical
// density measures all live here. Atoms are kept exactly as constructed
// (multiplicity preserved); merging coincident atoms is explicit.
struct PointMeasure {
  struct Atom {
    double value;
    double mass;
  };

  std::vector<Atom> atoms;

  PointMeasure() = default;

  explicit PointMeasure(std::vector<Atom> atoms_) : atoms(std::move(atoms_)) {
    for (const Atom& a : atoms) {
      if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
        throw std::invalid_argument("PointMeasure: atom masses must be nonnegative");
      }
      if (!(a.value >= -1.0 - 1e-9 && a.value <= 1.0 + 1e-9)) {
        throw std::invalid_argument("PointMeasure: atom value " + std::to_string(a.value) +
                                    " outside [-1, 1]");
      }
    }
    for (Atom& a : atoms) a.value = std::clamp(a.value, -1.0, 1.0);
  }

  // Equal-mass measure on the given values.
  static PointMeasure uniform_on(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("PointMeasure: needs at least one atom");
    std::vector<Atom> atoms;
    atoms.reserve(values.size());
    const double mass = 1.0 / static_cast<double>(values.size());
    for (double v : values) atoms.push_back({v, mass});
    return PointMeasure(std::move(atoms));
  }

  static PointMeasure point(double value) { return PointMeasure({{value, 1.0}}); }

  std::size_t size() const { return atoms.size(); }

  double total_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms) s += a.mass;
    return s;
  }

  PointMeasure sorted() const {
    PointMeasure out = *this;
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    return out;
  }

  // Merge atoms with equal values (after sorting); drops zero-mass atoms.
  PointMeasure merged() const {
    PointMeasure s = sorted();
    PointMeasure out;
    for (const Atom& a : s.atoms) {
      if (a.mass == 0.0) continue;
      if (!out.atoms.empty() && out.atoms.back().value == a.value) {
        out.atoms.back().mass += a.mass;
      } else {
        out.atoms.push_back(a);
      }
    }
    return out;
  }

  std::vector<double> sorted_values() const {
    std::vector<double> v;
    v.reserve(atoms.size());
    for (const Atom& a : atoms) v.push_back(a.value);
    std::sort(v.begin(), v.end());
    return v;
  }
};

// Ordered collection of measures; duplicates allowed.
using MeasureEnsemble = std::vector<PointMeasure>;

}  // namespace graphlim
