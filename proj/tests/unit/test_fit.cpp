#include <doctest.h>

#include <cmath>

#include "hartree/fit.hpp"

using namespace hartree;

TEST_SUITE("fit") {
  TEST_CASE("exact power laws") {
    std::vector<FitPoint> s, e, j;
    for (double x : {2.0, 4.0, 8.0}) {
      s.push_back({1.0, x, 3.0 * std::pow(x, 0.5)});
      e.push_back({x, 1.0, 0.1 * std::pow(x, 4.0)});
      for (double y : {1.0, 3.0}) j.push_back({x, y, std::pow(x, 4.0) * std::pow(y, 0.25)});
    }
    const FitReport a = fit_exponents(s, FitModel::sigma_power);
    CHECK(a.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::exp(a.intercept) == doctest::Approx(3.0));
    CHECK(a.residual < 1e-12);
    CHECK(a.points == 3);
    CHECK(fit_exponents(e, FitModel::eps_power).slope == doctest::Approx(4.0).epsilon(1e-12));
    const FitReport b = fit_exponents(j, FitModel::joint);
    CHECK(b.slope == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.sigma_slope == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("confidence half-width from residual spread") {
    // Residuals +d, -2d, +d about slope 1 in log2 coordinates give a known least-squares solution.
    const double d = 0.01;
    std::vector<FitPoint> p{{1.0, 1.0, std::exp(d)}, {1.0, 2.0, 2.0 * std::exp(-2 * d)}, {1.0, 4.0, 4.0 * std::exp(d)}};
    const FitReport r = fit_exponents(p, FitModel::sigma_power);
    CHECK(r.slope == doctest::Approx(1.0).epsilon(1e-12));
    // s^2 = 6 d^2 / 1, Sxx = 2 ln(2)^2, t_{0.975, 1} = 12.7062.
    const double se = std::sqrt(6.0 * d * d / (2.0 * std::log(2.0) * std::log(2.0)));
    CHECK(r.half_width == doctest::Approx(12.706204736 * se).epsilon(1e-6));
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS(fit_exponents({{1.0, 1.0, 1.0}}, FitModel::sigma_power));
    CHECK_THROWS(fit_exponents({{1.0, 1.0, -1.0}, {1.0, 2.0, 1.0}}, FitModel::sigma_power));
    CHECK_THROWS(parse_fit_model("cubic"));
    CHECK(parse_fit_model(to_string(FitModel::joint)) == FitModel::joint);
  }

  TEST_CASE("consecutive slopes") {
    const auto s = consecutive_slopes({1.0, 2.0, 4.0}, {1.0, 4.0, 8.0});
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(2.0));
    CHECK(s[1] == doctest::Approx(1.0));
  }
}
