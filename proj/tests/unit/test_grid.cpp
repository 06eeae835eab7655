#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hartree/error.hpp"
#include "hartree/grid.hpp"

using namespace hartree;

TEST_SUITE("grid") {
  TEST_CASE("coordinates and spacing") {
    const Grid g = make_grid(1, 16, 8.0);
    CHECK(g.dx() == doctest::Approx(1.0));
    CHECK(g.coordinate(0) == -8.0);
    CHECK(g.coordinate(15) == 7.0);
    CHECK(g.size() == 16);
    CHECK(make_grid(2, 16, 8.0).size() == 256);
    CHECK(make_grid(2, 16, 8.0).cell_volume() == doctest::Approx(1.0));
  }

  TEST_CASE("fft ordering of wavenumbers") {
    const Grid g = make_grid(1, 16, std::numbers::pi);
    const auto k = g.wavenumbers();
    for (int i = 0; i < 16; ++i) CHECK(k[i] == doctest::Approx(i < 8 ? i : i - 16));
    CHECK(g.frequency_spacing() == doctest::Approx(1.0));
  }

  TEST_CASE("squared wavenumber and radius arrays") {
    const Grid g = make_grid(2, 16, 8.0);
    const auto k2 = g.wavenumber_squared();
    const auto r2 = g.radius_squared();
    REQUIRE(k2.size() == 256);
    const double kmax = g.wavenumber(8);
    CHECK(k2[8 * 16 + 8] == doctest::Approx(2 * kmax * kmax));
    CHECK(k2[3 * 16 + 0] == doctest::Approx(g.wavenumber(3) * g.wavenumber(3)));
    CHECK(r2[0] == doctest::Approx(128.0));
    CHECK(r2[8 * 16 + 8] == doctest::Approx(0.0));
  }

  TEST_CASE("dual grid swaps position and frequency scales") {
    const Grid g = make_grid(2, 64, 16.0);
    const Grid h = dual_grid(g);
    CHECK(h.n == g.n);
    CHECK(h.half_width == doctest::Approx(std::numbers::pi / g.dx()));
    CHECK(h.dx() == doctest::Approx(g.frequency_spacing()));
  }

  TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS(make_grid(3, 8, 1.0));
    CHECK_THROWS(make_grid(1, 48, 1.0));
    CHECK_THROWS(make_grid(1, 8, 1.0));
    CHECK_THROWS(make_grid(1, 16, -1.0));
    CHECK_THROWS_AS(require_same_grid(make_grid(1, 16, 1.0), make_grid(1, 32, 1.0), "test"), Error);
  }
}
