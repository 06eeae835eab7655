#include <doctest.h>

#include <vector>

#include <random>
#include <vector>
#include "hartree/kernels.hpp"

using namespace hartree;
namespace k = hartree::kernels;
using k::cplx;

namespace {

std::vector<cplx> data(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<cplx> out(n);
  for (auto& z : out) z = {d(rng), d(rng)};
  return out;
}

std::vector<double> real_data(std::size_t n, unsigned seed) {
  std::vector<double> out;
  for (auto z : data(n, seed)) out.push_back(z.real());
  return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("kernels") {
  // 3 blocks plus a ragged end.
  constexpr std::size_t N = 3 * k::kReductionBlock + 123;

  TEST_CASE("pointwise kernels match the serial reference") {
    const auto a0 = data(N, 1), m = data(N, 2);
    const auto v = real_data(N, 3);
    auto a = a0, b = a0;
    k::scale(a, {0.5, -2.0});
    k::serial::scale(b, {0.5, -2.0});
    CHECK(max_diff(a, b) == 0.0);
    k::multiply(a, std::span<const double>(v));
    k::serial::multiply(b, std::span<const double>(v));
    CHECK(max_diff(a, b) == 0.0);
    k::multiply(a, std::span<const cplx>(m));
    k::serial::multiply(b, std::span<const cplx>(m));
    CHECK(max_diff(a, b) == 0.0);
    k::phase_multiply(a, v, 0.3);
    k::serial::phase_multiply(b, v, 0.3);
    CHECK(max_diff(a, b) == 0.0);
    k::free_phase(a, v, 0.7);
    k::serial::free_phase(b, v, 0.7);
    CHECK(max_diff(a, b) == 0.0);
    k::axpy(a, {1.5, 0.5}, m);
    k::serial::axpy(b, {1.5, 0.5}, m);
    CHECK(max_diff(a, b) == 0.0);
    std::vector<cplx> c(N), d(N);
    k::conj_product(c, a0, m);
    k::serial::conj_product(d, a0, m);
    CHECK(max_diff(c, d) == 0.0);
    CHECK(c[5] == a0[5] * std::conj(m[5]));
  }

  TEST_CASE("reductions match the serial reference to rounding") {
    const auto a = data(N, 4), b = data(N, 5);
    const auto w = real_data(N, 6);
    CHECK(k::sum_abs2(a) == doctest::Approx(k::serial::sum_abs2(a)).epsilon(1e-13));
    CHECK(k::sum_abs_pow(a, 3.5) == doctest::Approx(k::serial::sum_abs_pow(a, 3.5)).epsilon(1e-13));
    CHECK(k::sum_weighted_abs2(a, w) == doctest::Approx(k::serial::sum_weighted_abs2(a, w)).epsilon(1e-12));
    CHECK(std::abs(k::inner(a, b) - k::serial::inner(a, b)) < 1e-10);
    CHECK(k::max_abs(a) == k::serial::max_abs(a));
  }

  TEST_CASE("reductions are independent of the thread count") {
    const auto a = data(N, 7);
    const int saved = k::thread_count();
    k::set_thread_count(1);
    const double one = k::sum_abs2(a);
    const cplx in1 = k::inner(a, a);
    k::set_thread_count(4);
    CHECK(k::sum_abs2(a) == one);
    CHECK(k::inner(a, a) == in1);
    k::set_thread_count(saved);
  }

  TEST_CASE("phase multiply is unimodular") {
    auto a = data(1000, 8);
    const auto v = real_data(1000, 9);
    const double before = k::sum_abs2(a);
    k::phase_multiply(a, v, 12.0);
    CHECK(k::sum_abs2(a) == doctest::Approx(before).epsilon(1e-14));
  }
}
