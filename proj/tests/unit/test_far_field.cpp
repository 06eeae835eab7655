#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "hartree/far_field.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;
using std::numbers::pi;

namespace {
// Q(e^{it Laplacian} e^{-|x|^2/2}) in two dimensions.
double free_gaussian_Q(double t, double gamma) {
  return pi * pi / 8.0 * std::tgamma(1.0 - gamma / 2.0) * std::pow(2.0, 1.0 - gamma / 2.0) *
         std::pow(1.0 + 4.0 * t * t, -gamma / 2.0);
}
}  // namespace

TEST_SUITE("far_field") {
  TEST_CASE("radii of a Gaussian") {
    // |u|^2 = exp(-|x|^2): mass outside R is exp(-R^2), and the same in frequency with exp(-|xi|^2).
    const Grid g = make_grid(2, 128, 12.0);
    const ComplexField u = testing::gauss(g, 1.0);
    CHECK(mass_radius(u, 1e-6) == doctest::Approx(std::sqrt(-std::log(1e-6))).epsilon(0.05));
    CHECK(frequency_radius(u, 1e-6) == doctest::Approx(std::sqrt(-std::log(1e-6))).epsilon(0.05));
  }

  TEST_CASE("lens evaluation agrees with direct propagation") {
    const Grid g = make_grid(2, 128, 32.0);
    const double gamma = 1.5;
    const ComplexField phi = testing::gauss(g, 1.0);
    const HartreeKernel Kd = make_kernel(dual_grid(g), gamma);
    const FarField ff(phi, Kd);
    for (double t : {2.0, 5.0, 50.0}) CHECK(ff.Q(t) == doctest::Approx(free_gaussian_Q(t, gamma)).epsilon(1e-6));
    const HartreeKernel K = make_kernel(g, gamma);
    CHECK(potential_Q(free_propagate(phi, 2.0), K) == doctest::Approx(ff.Q(2.0)).epsilon(1e-6));
    const double r = 3.2;
    CHECK(ff.lebesgue_norm(5.0, r) == doctest::Approx(lebesgue_norm(free_propagate(phi, 5.0), r)).epsilon(1e-6));
    CHECK(ff.profile(3.0).l2_norm() == doctest::Approx(phi.l2_norm()).epsilon(1e-10));
  }

  TEST_CASE("free energy integral of a Gaussian") {
    // int_0^inf (1 + 4t^2)^{-gamma/2} dt = (sqrt(pi)/4) Gamma((gamma-1)/2) / Gamma(gamma/2).
    const Grid g = make_grid(2, 256, 32.0);
    for (double gamma : {1.4, 1.75}) {
      const HartreeKernel K = make_kernel(g, gamma);
      const FreeEnergyResult r = free_energy_integral(testing::gauss(g, 1.0), K);
      const double exact = free_gaussian_Q(0.0, gamma) * std::sqrt(pi) / 4.0 * std::tgamma((gamma - 1.0) / 2.0) /
                           std::tgamma(gamma / 2.0);
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
      CHECK(r.reliable);
      CHECK(r.value == doctest::Approx(r.near + r.far + r.tail));
      CHECK(r.switch_mismatch < 1e-6);
    }
  }
}
