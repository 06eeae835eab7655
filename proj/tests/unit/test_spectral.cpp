#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hartree/fft.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;

TEST_SUITE("spectral") {
  TEST_CASE("round trip and Plancherel") {
    for (int d : {1, 2}) {
      const Grid g = make_grid(d, 64, 5.0);
      const ComplexField f = testing::random_field(g, 11);
      const ComplexField F = transform(f, Direction::forward);
      CHECK(F.representation() == Representation::frequency);
      CHECK(F.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-13));
      CHECK(relative_l2_error(transform(F, Direction::inverse), f) < 1e-13);
    }
  }

  TEST_CASE("raw fft pair multiplies by the size") {
    const Grid g = make_grid(2, 16, 1.0);
    auto f = testing::random_field(g, 12);
    const auto orig = f;
    fft::forward(g, f.values());
    fft::inverse(g, f.values());
    f *= 1.0 / static_cast<double>(g.size());
    CHECK(relative_l2_error(f, orig) < 1e-14);
  }

  TEST_CASE("centred Gaussian has a real positive spectrum") {
    const Grid g = make_grid(1, 128, 16.0);
    const ComplexField F = transform(testing::gauss(g, 1.0), Direction::forward);
    for (auto z : F.values()) {
      CHECK(std::abs(z.imag()) < 1e-12);
      CHECK(z.real() > -1e-12);
    }
  }

  TEST_CASE("free propagator against the closed form in two dimensions") {
    // e^{it Laplacian} e^{-|x|^2/2} = (1 + 2it)^{-1} e^{-|x|^2 / (2 (1 + 2it))}.
    const Grid g = make_grid(2, 256, 32.0);
    const ComplexField phi = testing::gauss(g, 1.0);
    for (double t : {0.3, 1.7}) {
      const cplx a(1.0, 2.0 * t);
      const ComplexField exact =
          ComplexField::sample(g, [&](double x, double y) { return std::exp(-(x * x + y * y) / (2.0 * a)) / a; });
      CHECK(relative_l2_error(free_propagate(phi, t), exact) < 1e-9);
    }
  }

  TEST_CASE("free propagator is a unitary group") {
    const Grid g = make_grid(2, 32, 8.0);
    const ComplexField f = testing::random_field(g, 13);
    const ComplexField a = free_propagate(free_propagate(f, 0.4), 0.9);
    CHECK(relative_l2_error(a, free_propagate(f, 1.3)) < 1e-13);
    CHECK(relative_l2_error(free_propagate(a, -1.3), f) < 1e-13);
    CHECK(a.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-13));
  }

  TEST_CASE("spectral gradient of a Gaussian") {
    const Grid g = make_grid(2, 64, 12.0);
    const auto grad = gradient(testing::gauss(g, 1.0));
    REQUIRE(grad.size() == 2);
    const ComplexField gx =
        ComplexField::sample(g, [](double x, double y) { return cplx(-x * std::exp(-(x * x + y * y) / 2.0), 0.0); });
    const ComplexField gy =
        ComplexField::sample(g, [](double x, double y) { return cplx(-y * std::exp(-(x * x + y * y) / 2.0), 0.0); });
    CHECK(relative_l2_error(grad[0], gx) < 1e-10);
    CHECK(relative_l2_error(grad[1], gy) < 1e-10);
  }

  TEST_CASE("vector field J through both routes") {
    const Grid g = make_grid(2, 256, 24.0);
    const ComplexField phi = testing::gauss(g, 1.2, 1.0, 0.5);
    for (double t : {0.0, 0.5, 2.0}) {
      const auto a = apply_J(phi, t);
      const auto b = apply_J_factored(phi, t);
      for (int i = 0; i < 2; ++i) CHECK(relative_l2_error(a[i], b[i]) < 1e-8);
    }
    // J(t) e^{it Laplacian} phi = e^{it Laplacian} (x phi).
    const double t = 1.5;
    const auto J = apply_J(free_propagate(phi, t), t);
    CHECK(relative_l2_error(J[0], free_propagate(multiply_by_coordinate(phi, 0), t)) < 1e-9);
  }

  TEST_CASE("M(t) is a unimodular multiplier") {
    const Grid g = make_grid(2, 32, 4.0);
    const ComplexField f = testing::random_field(g, 14);
    CHECK(apply_M(f, 0.7).l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-14));
    CHECK(relative_l2_error(apply_M(apply_M(f, 0.7), -0.7), f) < 1e-14);
    CHECK_THROWS(apply_M(f, 0.0));
  }

  TEST_CASE("dealiasing keeps low modes and removes high ones") {
    const Grid g = make_grid(1, 64, std::numbers::pi);
    ComplexField low = ComplexField::sample(g, [](double x, double) { return std::exp(cplx(0, 5.0 * x)); });
    ComplexField high = ComplexField::sample(g, [](double x, double) { return std::exp(cplx(0, 25.0 * x)); });
    const auto low0 = low;
    dealias(low);
    dealias(high);
    CHECK(relative_l2_error(low, low0) < 1e-13);
    CHECK(high.l2_norm() < 1e-12);
  }

  TEST_CASE("mass fraction outside a ball") {
    // exp(-|x|^2): fraction outside radius R is exp(-2 R^2) in two dimensions.
    const Grid g = make_grid(2, 256, 8.0);
    const ComplexField f = testing::gauss(g, std::sqrt(0.5));
    CHECK(mass_fraction_outside(f, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(2e-2));
    CHECK(mass_fraction_outside(f, 100.0) == 0.0);
  }
}
