#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hartree/hierarchy.hpp"
#include "hartree/spectral.hpp"

using namespace hartree;

namespace {

Trajectory combine(const Trajectory& a, double ca, const Trajectory& b, double cb) {
  Trajectory out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push(a.times[i], ca * a.fields[i] + cb * b.fields[i]);
  return out;
}

}  // namespace

TEST_SUITE("hierarchy") {
  const Grid g = make_grid(2, 32, 12.0);
  const auto times = uniform_times(1.0, 20);

  TEST_CASE("geometric rate fit") {
    CHECK(fit_geometric_rate({3.0, 6.0, 12.0, 24.0}) == doctest::Approx(2.0));
    CHECK(fit_geometric_rate({1.0, 0.0, 0.25}) == doctest::Approx(0.5));
  }

  TEST_CASE("free coefficients") {
    const ComplexField v = testing::gauss(g, 1.0);
    const HierarchyCoefficients c = solve_hierarchy(ComplexField(g), v, 2, times, HartreeKernel::zero(g), {});
    CHECK(sup_distance(c.w[1], free_trajectory(v, times)) < 1e-14);
    CHECK(sup_l2(c.w[0]) == 0.0);
    CHECK(sup_l2(c.w[2]) == 0.0);
    CHECK(c.order() == 2);
  }

  TEST_CASE("first and second coefficients are derivatives of the solution map") {
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField data = testing::gauss(g, 1.5, 0.1);
    const ComplexField v = testing::gauss(g, 1.0, 1.0, 1.0);
    for (Anchor anchor : {Anchor::final_state, Anchor::initial}) {
      HierarchyOptions opt;
      opt.anchor = anchor;
      opt.picard = {1e-11, 200};
      const HierarchyCoefficients c = solve_hierarchy(data, v, 2, times, K, opt);
      const double e = 1e-2;
      const Trajectory up = solve_base(data + cplx(e) * v, times, K, opt).solution;
      const Trajectory dn = solve_base(data - cplx(e) * v, times, K, opt).solution;
      const Trajectory d1 = combine(up, 0.5 / e, dn, -0.5 / e);
      CHECK(sup_distance(d1, c.w[1]) / sup_l2(c.w[1]) < 1e-3);
      const Trajectory sum = combine(up, 1.0, dn, 1.0);
      const Trajectory d2 = combine(sum, 0.5 / (e * e), c.w[0], -1.0 / (e * e));
      CHECK(sup_distance(d2, c.w[2]) / sup_l2(c.w[2]) < 1e-3);
      CHECK(c.ledger.size() == 3);
      CHECK(c.w_plus.size() == 3);
    }
  }

  TEST_CASE("third coefficient at the origin is the resonant term") {
    const HartreeKernel K = make_kernel(g, 1.5);
    const ComplexField v = testing::gauss(g, 1.0);
    const HierarchyCoefficients c = solve_hierarchy(ComplexField(g), v, 3, times, K, {});
    const Trajectory w1 = free_trajectory(v, times);
    const Trajectory ref = nonlinear_N(w1, w1, w1, K, Anchor::final_state).value;
    CHECK(sup_distance(c.w[3], ref) <= 1e-12 * sup_l2(ref));
  }

  TEST_CASE("plus-state extraction on a Cauchy profile") {
    // P(t) = P_inf + (t + 1)^{-1} e makes the differences shrink geometrically.
    const ComplexField pinf = testing::gauss(g, 1.0);
    const ComplexField e = testing::gauss(g, 2.0, 0.1);
    const auto ts = uniform_times(8.0, 8);
    Trajectory w;
    for (double t : ts) w.push(t, free_propagate(pinf + cplx(1.0 / (t + 1.0)) * e, t));
    const PlusExtraction p = extract_plus(w, 1.5);
    CHECK(p.cauchy);
    CHECK(p.T == 8.0);
    CHECK(relative_l2_error(p.value, pinf + cplx(1.0 / 9.0) * e) < 1e-12);
    CHECK(relative_l2_error(p.extrapolated, pinf) < relative_l2_error(p.value, pinf));
    Trajectory grow;
    for (double t : ts) grow.push(t, free_propagate(pinf + cplx(t * t) * e, t));
    CHECK_THROWS(extract_plus(grow, 1.5));
  }
}
