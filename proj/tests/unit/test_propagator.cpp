#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hartree/error.hpp"
#include "hartree/functionals.hpp"
#include "hartree/propagator.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;

TEST_SUITE("propagator") {
  TEST_CASE("configuration errors are collected") {
    SolverConfig c;
    c.dt = -1.0;
    c.t1 = c.t0;
    c.order = 3;
    try {
      c.validate();
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.violations().size() == 3);
    }
    SolverConfig far;
    far.T_max = 0.5;
    CHECK_THROWS_AS(far.validate(), ConfigError);
  }

  TEST_CASE("step count rounds the span") {
    SolverConfig c;
    c.dt = 0.3;
    c.t1 = 1.0;
    CHECK(c.steps() == 3);
    CHECK(c.step() == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("zero kernel reproduces the free flow") {
    const Grid g = make_grid(2, 128, 32.0);
    const ComplexField u0 = testing::gauss(g, 1.0, 1.0, 1.0);
    SolverConfig c;
    c.dt = 0.1;
    c.t1 = 2.0;
    c.record_every = 5;
    const Trajectory tr = evolve(u0, c, HartreeKernel::zero(g));
    CHECK(tr.size() == 5);
    CHECK(relative_l2_error(tr.fields.back(), free_propagate(u0, 2.0)) < 1e-12);
  }

  TEST_CASE("merged half steps agree with plain Strang steps") {
    const Grid g = make_grid(2, 128, 32.0);
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField u0 = testing::gauss(g, 1.5, 1.0);
    SolverConfig c;
    c.dt = 0.05;
    c.t1 = 0.5;
    c.record_every = 100;
    const ComplexField merged = evolve(u0, c, K).fields.back();
    ComplexField plain = u0;
    for (int i = 0; i < 10; ++i) plain = step_strang(plain, 0.05, K);
    CHECK(relative_l2_error(merged, plain) < 1e-12);
  }

  TEST_CASE("mass is conserved and energy drift is second order") {
    const Grid g = make_grid(2, 128, 48.0);
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField u0 = testing::gauss(g, 2.0, 0.8);
    double drift[2];
    int i = 0;
    for (double dt : {0.04, 0.02}) {
      SolverConfig c;
      c.dt = dt;
      c.t1 = 1.0;
      c.record_every = 5;
      c.check_energy = true;
      EvolveDiagnostics d;
      evolve(u0, c, K, &d);
      CHECK(d.max_mass_drift < 1e-12);
      CHECK(d.energy.size() == d.times.size());
      drift[i++] = d.max_energy_drift;
    }
    CHECK(drift[0] / drift[1] == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("fourth-order composition converges at rate 16") {
    const Grid g = make_grid(2, 128, 32.0);
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField u0 = testing::gauss(g, 1.5, 1.0);
    std::vector<ComplexField> out;
    for (double dt : {0.05, 0.025, 0.0125}) {
      SolverConfig c;
      c.dt = dt;
      c.t1 = 1.0;
      c.order = 4;
      c.record_every = 1000;
      out.push_back(evolve(u0, c, K).fields.back());
    }
    const double ratio = (out[0] - out[1]).l2_norm() / (out[1] - out[2]).l2_norm();
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.15));
  }

  TEST_CASE("the scheme is time reversible") {
    const Grid g = make_grid(2, 128, 32.0);
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField u0 = testing::gauss(g, 1.5, 1.0);
    SolverConfig f;
    f.dt = 0.05;
    f.t1 = 1.0;
    f.record_every = 1000;
    const ComplexField u1 = evolve(u0, f, K).fields.back();
    SolverConfig b = f;
    b.t0 = 1.0;
    b.t1 = 0.0;
    CHECK(relative_l2_error(evolve(u1, b, K).fields.back(), u0) < 1e-12);
  }

  TEST_CASE("wrap-around alarm fires") {
    const Grid g = make_grid(2, 32, 4.0);
    SolverConfig c;
    c.dt = 0.1;
    c.t1 = 5.0;
    CHECK_THROWS_AS(evolve(testing::gauss(g, 0.5), c, make_kernel(g, 1.5)), SolverAlarm);
  }

  TEST_CASE("profiles") {
    const Grid g = make_grid(2, 128, 32.0);
    const ComplexField u0 = testing::gauss(g, 1.0);
    SolverConfig c;
    c.dt = 0.1;
    c.t1 = 1.0;
    const Trajectory phys = evolve(u0, c, HartreeKernel::zero(g));
    const Trajectory prof = interaction_profile(phys);
    CHECK(prof.picture == Picture::interaction);
    for (const auto& f : prof.fields) CHECK(relative_l2_error(f, u0) < 1e-12);
    CHECK(relative_l2_error(physical_profile(prof).fields.back(), phys.fields.back()) < 1e-12);
  }
}
