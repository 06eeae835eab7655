#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "hartree/error.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/quadrature.hpp"

using namespace hartree;

namespace {

// (|x|^{-gamma} * e^{-|y|^2})(x) for gamma = 1.5, radially: substituting r = s^2 makes
// 2 pi int r^{1-gamma} e^{-r^2 - |x|^2} I_0(2 r |x|) dr smooth.
double potential_oracle(double rx) {
  const GaussLegendre gl(200);
  auto f = [&](double s) {
    const double r = s * s;
    return 2.0 * s * std::pow(r, -0.5) * std::exp(-r * r - rx * rx) * boost::math::cyl_bessel_i(0, 2.0 * r * rx);
  };
  double total = 0.0;
  for (int i = 0; i < 8; ++i) total += gl.integrate(f, 0.5 * i, 0.5 * (i + 1));
  return 2.0 * std::numbers::pi * total;
}

std::size_t index_of(const Grid& g, double x, double y) {
  const auto i = static_cast<std::size_t>(std::llround((x + g.half_width) / g.dx()));
  const auto j = static_cast<std::size_t>(std::llround((y + g.half_width) / g.dx()));
  return i * g.n + j;
}

}  // namespace

TEST_SUITE("hartree_kernel") {
  TEST_CASE("potential at the origin against the Gamma-function closed form") {
    const Grid g = make_grid(2, 128, 16.0);
    const ComplexField u = testing::gauss(g, 1.0);
    for (double gamma : {1.4, 1.5, 1.75}) {
      const HartreeKernel K = make_kernel(g, gamma, ZeroModePolicy::truncated_direct, false);
      const ComplexField V = hartree_potential(u, u, K);
      const double exact = std::numbers::pi * std::tgamma(1.0 - gamma / 2.0);
      CHECK(V[index_of(g, 0.0, 0.0)].real() == doctest::Approx(exact).epsilon(1e-6));
    }
  }

  TEST_CASE("potential off the origin against radial quadrature") {
    const Grid g = make_grid(2, 128, 16.0);
    const ComplexField u = testing::gauss(g, 1.0);
    const HartreeKernel K = make_kernel(g, 1.5, ZeroModePolicy::truncated_direct, false);
    const ComplexField V = hartree_potential(u, u, K);
    for (auto [x, y] : {std::pair{1.0, 0.0}, {2.0, 1.0}, {-3.0, 2.0}}) {
      const double oracle = potential_oracle(std::hypot(x, y));
      CHECK(V[index_of(g, x, y)].real() == doctest::Approx(oracle).epsilon(1e-6));
      CHECK(std::abs(V[index_of(g, x, y)].imag()) < 1e-12);
    }
  }

  TEST_CASE("cell-average symbol approaches the same potential on a large box") {
    const Grid g = make_grid(2, 256, 64.0);
    const ComplexField u = testing::gauss(g, 1.0);
    const HartreeKernel K = make_kernel(g, 1.5, ZeroModePolicy::cell_average, false);
    const ComplexField V = hartree_potential(u, u, K);
    const double exact = std::numbers::pi * std::tgamma(0.25);
    CHECK(V[index_of(g, 0.0, 0.0)].real() == doctest::Approx(exact).epsilon(2e-2));
  }

  TEST_CASE("symbol is nonnegative and finite") {
    const HartreeKernel K = make_kernel(make_grid(2, 64, 8.0), 1.5);
    for (double m : K.multiplier) {
      CHECK(std::isfinite(m));
      CHECK(m >= 0.0);
    }
    CHECK(K.applied.size() == K.multiplier.size());
  }

  TEST_CASE("trilinear form is (K * u conj(v)) w") {
    const Grid g = make_grid(2, 32, 8.0);
    const HartreeKernel K = make_kernel(g, 1.5, ZeroModePolicy::truncated_direct, false);
    const ComplexField a = testing::gauss(g, 1.0, 1.0, 0.5), b = testing::gauss(g, 1.5), w = testing::random_field(g, 3);
    const ComplexField T = trilinear_T(a, b, w, K);
    const ComplexField V = hartree_potential(a, b, K);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(T[i] - V[i] * w[i]));
    CHECK(err < 1e-12);
  }

  TEST_CASE("zero kernel and invalid exponents") {
    const Grid g = make_grid(2, 16, 4.0);
    const HartreeKernel Z = HartreeKernel::zero(g);
    CHECK(Z.is_zero());
    const ComplexField f = testing::random_field(g, 4);
    CHECK(hartree_potential(f, f, Z).l2_norm() == 0.0);
    CHECK_THROWS(make_kernel(g, 2.0));
    CHECK_THROWS(make_kernel(make_grid(1, 16, 4.0), 1.5));
    CHECK_THROWS(make_kernel(g, 0.0));
  }

  TEST_CASE("policy names parse") {
    CHECK(parse_zero_mode_policy("truncated_direct") == ZeroModePolicy::truncated_direct);
    CHECK(parse_zero_mode_policy(to_string(ZeroModePolicy::cell_average)) == ZeroModePolicy::cell_average);
    CHECK_THROWS(parse_zero_mode_policy("nope"));
  }
}
