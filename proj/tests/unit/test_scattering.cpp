#include <doctest.h>

#include "helpers.hpp"
#include "hartree/error.hpp"
#include "hartree/scattering.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;

TEST_SUITE("scattering") {
  const Grid g = make_grid(2, 128, 40.0);

  TEST_CASE("free flow scatters to its data") {
    const ComplexField u0 = testing::gauss(g, 1.5, 0.3);
    SolverConfig c;
    c.dt = 0.1;
    c.t1 = 2.0;
    const ScatterResult s = scattering_state(u0, c, HartreeKernel::zero(g));
    CHECK(relative_l2_error(s.u_plus, u0) < 1e-13);
    CHECK(relative_l2_error(wave_operator(u0, c, HartreeKernel::zero(g)).u_plus, u0) < 1e-13);
  }

  TEST_CASE("scattering state is the pulled-back final state") {
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField u0 = testing::gauss(g, 1.5, 0.5);
    SolverConfig c;
    c.dt = 0.05;
    c.t1 = 2.0;
    const ScatterResult s = scattering_state(u0, c, K);
    const ComplexField uT = evolve(u0, c, K).fields.back();
    CHECK(relative_l2_error(s.u_plus, free_propagate(uT, -2.0)) < 1e-13);
    CHECK(s.T_used == 2.0);
    CHECK(s.tail_ratio > 0.0);
  }

  TEST_CASE("wave operator inverts the forward flow") {
    // Evolving W(u_plus) forward and pulling back must return u_plus.
    const Grid gf = make_grid(2, 256, 40.0);
    const HartreeKernel K = make_kernel(gf, 1.5);
    const ComplexField u_plus = testing::gauss(gf, 1.5, 0.2);
    double err[2];
    int i = 0;
    for (double dt : {0.05, 0.025}) {
      SolverConfig c;
      c.dt = dt;
      c.t1 = 2.0;
      const ScatterResult w = wave_operator(u_plus, c, K, {1e-12, 200});
      CHECK(w.contraction < 1.0);
      CHECK(relative_l2_error(w.u_plus, u_plus) > 1e-3);
      const ComplexField uT = evolve(w.u_plus, c, K).fields.back();
      err[i++] = relative_l2_error(free_propagate(uT, -2.0), u_plus);
    }
    // Both solvers are second order, so the mismatch is too.
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.2));
    CHECK(err[1] < 3e-5);
  }

  TEST_CASE("configuration requirements") {
    const ComplexField u0 = testing::gauss(g, 1.5, 0.2);
    SolverConfig c;
    c.dt = 0.1;
    c.t0 = 0.5;
    c.t1 = 2.5;
    CHECK_THROWS_AS(scattering_state(u0, c, make_kernel(g, 1.5)), ConfigError);
    c.t0 = 0.0;
    c.t1 = 0.3;
    CHECK_THROWS_AS(scattering_state(u0, c, make_kernel(g, 1.5)), ConfigError);
  }

  TEST_CASE("contraction factor grows with the amplitude") {
    const HartreeKernel K = make_kernel(g, 1.5);
    SolverConfig c;
    c.dt = 0.1;
    c.t1 = 2.0;
    const RadiusCalibration cal = calibrate_radius(testing::gauss(g, 1.5), c, K, {0.1, 0.3, 1.0});
    REQUIRE(cal.factors.size() == 3);
    CHECK(cal.factors[0] < cal.factors[1]);
    CHECK(cal.radius > 0.0);
    CHECK(cal.radius <= cal.sigma_norms.back());
  }

  TEST_CASE("radius table") {
    RadiusTable t;
    t.store(2, 1.5, 0.3);
    CHECK(t.contains(2, 1.5));
    CHECK(t.at(2, 1.5) == 0.3);
    CHECK_THROWS(t.at(2, 1.6));
  }
}
