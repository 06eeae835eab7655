#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "hartree/error.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;
using std::numbers::pi;

namespace {
// Q of a exp(-|x|^2/(2w^2)) in two dimensions, from the Gaussian self-convolution.
double gaussian_Q(double a, double w, double gamma) {
  const double conv = pi * w * w / 2.0;
  return 0.25 * std::pow(a, 4) * conv * pi * std::pow(2.0 * w * w, 1.0 - gamma / 2.0) * std::tgamma(1.0 - gamma / 2.0);
}
}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("exponent identities") {
    for (double gamma : {1.35, 1.5, 1.9}) {
      const auto e = make_exponents(gamma, 2);
      CHECK(e.r == doctest::Approx(8.0 / (4.0 - gamma)));
      CHECK(e.q == doctest::Approx(8.0 / gamma));
      CHECK(e.alpha == doctest::Approx(8.0 / (4.0 - gamma)));
      CHECK(e.theta == doctest::Approx(gamma / 4.0));
      CHECK(std::abs(e.admissibility_defect()) < 1e-14);
      CHECK(std::abs(e.holder_defect()) < 1e-14);
      CHECK(e.decay_exponent() == doctest::Approx(gamma / 4.0));
    }
  }

  TEST_CASE("mass, gradient and weight norms of a Gaussian") {
    const Grid g = make_grid(2, 128, 16.0);
    const double w = 1.5, a = 0.7;
    const ComplexField u = testing::gauss(g, w, a);
    const NormLedger n = weighted_norms(u);
    CHECK(mass(u) == doctest::Approx(pi * w * w * a * a).epsilon(1e-12));
    CHECK(n.at("L2") == doctest::Approx(std::sqrt(pi) * w * a).epsilon(1e-12));
    CHECK(n.at("grad_L2") == doctest::Approx(std::sqrt(pi) * a).epsilon(1e-10));
    CHECK(n.at("x_L2") == doctest::Approx(std::sqrt(pi) * w * w * a).epsilon(1e-10));
    CHECK(n.at("Sigma") == doctest::Approx(n.at("H1") + n.at("x_L2")));
    CHECK(n.at("H1") == doctest::Approx(std::hypot(n.at("L2"), n.at("grad_L2"))));
  }

  TEST_CASE("potential energy against the closed form") {
    const Grid g = make_grid(2, 128, 24.0);
    for (double gamma : {1.4, 1.75}) {
      const HartreeKernel K = make_kernel(g, gamma, ZeroModePolicy::truncated_direct, false);
      const ComplexField u = testing::gauss(g, 2.0, 0.5);
      CHECK(potential_Q(u, K) == doctest::Approx(gaussian_Q(0.5, 2.0, gamma)).epsilon(1e-7));
      CHECK(energy(u, K) == doctest::Approx(0.5 * pi * 0.25 + gaussian_Q(0.5, 2.0, gamma)).epsilon(1e-7));
    }
  }

  TEST_CASE("Lebesgue norms along the free Gaussian flow") {
    // |e^{it Laplacian} e^{-|x|^2/2}| gives ||u(t)||_r = (2 pi / r)^{1/r} (1 + 4t^2)^{1/r - 1/2}.
    const Grid g = make_grid(2, 256, 64.0);
    const ComplexField phi = testing::gauss(g, 1.0);
    const double r = 8.0 / 2.5;
    auto exact = [&](double t) { return std::pow(2.0 * pi / r, 1.0 / r) * std::pow(1.0 + 4.0 * t * t, 1.0 / r - 0.5); };
    for (double t : {0.0, 1.0, 3.0}) CHECK(lebesgue_norm(free_propagate(phi, t), r) == doctest::Approx(exact(t)).epsilon(1e-10));
    CHECK(lebesgue_norm(phi, kInfinity) == doctest::Approx(1.0));
    CHECK_THROWS(lebesgue_norm(phi, 0.5));

    const auto e = make_exponents(1.5, 2);
    const DecayTable table = decay_check(phi, {1.0, 2.0, 4.0}, e);
    REQUIRE(table.rows.size() == 3);
    const double slope = std::log(exact(4.0) / exact(2.0)) / std::log(2.0);
    CHECK(table.tail_slope == doctest::Approx(slope).epsilon(1e-8));
    CHECK(table.constant > 0.0);
    for (const auto& row : table.rows) CHECK(row.ratio <= table.constant);
  }

  TEST_CASE("space-time norms of a linear ramp") {
    const Grid g = make_grid(2, 32, 4.0);
    const ComplexField phi = testing::gauss(g, 1.0);
    Trajectory traj;
    for (int i = 0; i <= 64; ++i) {
      const double t = i / 64.0;
      traj.push(t, t * phi);
    }
    const double q = 8.0 / 1.5, r = 3.2;
    const double exact = lebesgue_norm(phi, r) * std::pow(1.0 / (q + 1.0), 1.0 / q);
    const SpacetimeNorm s = spacetime_norm(traj, q, r);
    CHECK(s.richardson == doctest::Approx(exact).epsilon(1e-6));
    CHECK(s.value == doctest::Approx(exact).epsilon(1e-3));
    CHECK(spacetime_norm(traj, kInfinity, 2.0).value == doctest::Approx(phi.l2_norm()));
    CHECK(sup_l2(traj) == doctest::Approx(phi.l2_norm()));
  }

  TEST_CASE("norm ledger and trajectories validate their inputs") {
    NormLedger n;
    n.set("mass", 1.0);
    CHECK(n.at("mass") == 1.0);
    CHECK_THROWS(n.set("mass", -1.0));
    CHECK_THROWS(n.set("mass", std::nan("")));
    CHECK_THROWS(n.at("missing"));
    Trajectory t;
    t.push(0.0, ComplexField(make_grid(1, 16, 1.0)));
    CHECK_THROWS([&] {
      t.push(0.0, ComplexField(make_grid(1, 16, 1.0)));
      t.validate();
    }());
  }
}
