#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hartree/hierarchy.hpp"
#include "hartree/spectral.hpp"
#include "hartree/taylor.hpp"

using namespace hartree;

TEST_SUITE("taylor") {
  const Grid g = make_grid(2, 32, 12.0);

  TEST_CASE("free flow has only a first coefficient") {
    TaylorOptions o;
    o.order = 3;
    o.T = 1.0;
    o.steps = 10;
    const ComplexField v = testing::gauss(g, 1.0);
    const TaylorResult r = taylor_march(testing::gauss(g, 1.5, 0.3), v, HartreeKernel::zero(g), o);
    CHECK(relative_l2_error(r.w_final[1], free_propagate(v, 1.0)) < 1e-13);
    CHECK(relative_l2_error(r.w_plus[1], v) < 1e-13);
    for (int k = 2; k <= 3; ++k) CHECK(r.sup_norm[k] == 0.0);
  }

  TEST_CASE("structural zeros at the origin") {
    TaylorOptions o;
    o.order = 5;
    o.T = 1.0;
    o.steps = 10;
    const TaylorResult r = taylor_march(ComplexField(g), testing::gauss(g, 1.0), make_kernel(g, 1.5), o);
    CHECK(r.vanishes[0]);
    CHECK(r.vanishes[2]);
    CHECK(r.vanishes[4]);
    CHECK(!r.vanishes[3]);
    CHECK(r.sup_norm[3] > 0.0);
  }

  TEST_CASE("companion remainders scale like eps^(N+1)") {
    TaylorOptions o;
    o.order = 3;
    o.T = 1.0;
    o.steps = 40;
    o.companions = {0.02, 0.01};
    const TaylorResult r = taylor_march(testing::gauss(g, 1.5, 0.5), testing::gauss(g, 1.0, 1.0, 0.5),
                                        make_kernel(g, 1.5), o);
    for (int N = 0; N <= 3; ++N) {
      const double ratio = r.remainder[0][N] / r.remainder[1][N];
      CHECK(ratio == doctest::Approx(std::pow(2.0, N + 1)).epsilon(0.1));
    }
  }

  TEST_CASE("coefficients converge to the Duhamel hierarchy as dt shrinks") {
    const Grid gf = make_grid(2, 128, 12.0);
    const HartreeKernel K = make_kernel(gf, 1.5);
    const ComplexField u0 = testing::gauss(gf, 1.5, 0.1);
    const ComplexField v = testing::gauss(gf, 1.0, 0.2, 0.5);
    HierarchyOptions h;
    h.anchor = Anchor::initial;
    h.picard = {1e-11, 200};
    const HierarchyCoefficients fine = solve_hierarchy(u0, v, 2, uniform_times(1.0, 320), K, h);
    double err[2];
    int i = 0;
    for (std::size_t steps : {20, 40}) {
      TaylorOptions o;
      o.order = 2;
      o.T = 1.0;
      o.steps = steps;
      const TaylorResult r = taylor_march(u0, v, K, o);
      err[i++] = relative_l2_error(r.w_final[2], fine.w[2].fields.back());
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.25));
    CHECK(err[1] < 1e-2);
  }

  TEST_CASE("the three parts of w3 add up") {
    TaylorOptions o;
    // The parts are a trapezoid of the continuous Duhamel integrals, w_plus[3] the
    // discrete coefficient, so they agree to second order in dt.
    const Grid fine = make_grid(2, 128, 12.0);
    double gap[2];
    int i = 0;
    for (std::size_t steps : {20, 40}) {
      TaylorOptions o;
      o.order = 3;
      o.T = 1.0;
      o.steps = steps;
      o.w3_parts = true;
      o.profile_checkpoints = 4;
      const TaylorResult r =
          taylor_march(testing::gauss(fine, 1.5, 0.5), testing::gauss(fine, 1.0), make_kernel(fine, 1.5), o);
      REQUIRE(r.parts.has_value());
      const ComplexField sum = r.parts->linear + r.parts->mixed + r.parts->resonant;
      gap[i++] = relative_l2_error(sum, r.w_plus[3]);
      CHECK(r.profile_times.size() == r.profile_gap.size());
      CHECK(!r.profile_gap.empty());
    }
    CHECK(gap[0] / gap[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(gap[1] < 1e-3);
  }
}
