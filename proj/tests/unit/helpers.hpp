#pragma once
#include <random>

#include "hartree/field.hpp"

namespace testing {

inline hartree::ComplexField random_field(const hartree::Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  hartree::ComplexField f(g);
  for (auto& z : f.values()) z = {n(rng), n(rng)};
  return f;
}

// exp(-|x|^2 / (2 w^2)) sampled directly, independent of the library's gaussian().
inline hartree::ComplexField gauss(const hartree::Grid& g, double w, double a = 1.0, double x0 = 0.0) {
  return hartree::ComplexField::sample(g, [&](double x, double y) {
    const double r2 = (x - x0) * (x - x0) + (g.dim == 2 ? y * y : 0.0);
    return hartree::cplx(a * std::exp(-r2 / (2.0 * w * w)), 0.0);
  });
}

}  // namespace testing
