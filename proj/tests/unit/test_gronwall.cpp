#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hartree/gronwall.hpp"

using namespace hartree;

TEST_SUITE("gronwall") {
  TEST_CASE("C2 against a partial sum with tail bound") {
    double s = 0.0;
    const int K = 2000000;
    for (int k = 0; k <= K; ++k) s += 1.0 / japanese_sq(k);
    CHECK(gronwall_C2() == doctest::Approx(s + 1.0 / K).epsilon(1e-10));
  }

  TEST_CASE("recursion matches brute-force enumeration") {
    for (auto conv : {IndexConvention::from_one, IndexConvention::from_zero}) {
      const auto s = gronwall_sequence(0.7, 0.4, 25, conv, 0.1);
      const auto b = gronwall_bruteforce(0.7, 0.4, 25, conv, 0.1);
      REQUIRE(s.a.size() == b.size());
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(s.a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("small cases by hand") {
    // a_1 = a1, a_2 = 0 (needs an index 0), a_3 = C a1^3.
    const auto s = gronwall_sequence(2.0, 0.5, 4);
    CHECK(s.a[0] == 0.5);
    CHECK(s.a[1] == 0.0);
    CHECK(s.a[2] == doctest::Approx(2.0 * 0.125));
    CHECK(s.a[3] == 0.0);
  }

  TEST_CASE("bounds hold with the stated constants") {
    for (auto [C, a1] : {std::pair{1.0, 0.5}, {2.0, 0.1}, {0.5, 1.0}}) {
      const auto s = gronwall_sequence(C, a1, 50);
      CHECK(s.plain_holds);
      CHECK(s.strengthened_holds);
      CHECK(s.C1 == doctest::Approx(1.0 / std::sqrt(9.0 * C * gronwall_C2() * gronwall_C2())));
      CHECK(s.C0 * s.C1 == doctest::Approx(2.0));
      CHECK(s.worst_ratio <= 1.0 + 1e-10);
      CHECK(s.C0_min <= s.C0 * (1.0 + 1e-12));
    }
  }
}
