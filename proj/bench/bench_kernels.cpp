// Serial vs OpenMP kernels, and whole split steps, on 2D grids.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hartree/experiments.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/kernels.hpp"
#include "hartree/propagator.hpp"

using namespace hartree;
namespace k = hartree::kernels;

namespace {

std::vector<k::cplx> field(std::size_t n) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  std::vector<k::cplx> a(n);
  for (auto& x : a) x = {g(rng), g(rng)};
  return a;
}

std::vector<double> real_field(std::size_t n) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::vector<double> a(n);
  for (auto& x : a) x = u(rng);
  return a;
}

template <bool Parallel>
void BM_phase_multiply(benchmark::State& state) {
  const std::size_t n = state.range(0) * state.range(0);
  auto a = field(n);
  const auto v = real_field(n);
  for (auto _ : state) {
    if constexpr (Parallel) k::phase_multiply(a, v, 1e-3);
    else k::serial::phase_multiply(a, v, 1e-3);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_sum_abs2(benchmark::State& state) {
  const std::size_t n = state.range(0) * state.range(0);
  const auto a = field(n);
  for (auto _ : state) {
    double s = Parallel ? k::sum_abs2(a) : k::serial::sum_abs2(a);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_conj_product(benchmark::State& state) {
  const std::size_t n = state.range(0) * state.range(0);
  const auto a = field(n), b = field(n);
  std::vector<k::cplx> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) k::conj_product(out, a, b);
    else k::serial::conj_product(out, a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_convolve(benchmark::State& state) {
  const Grid g = make_grid(2, state.range(0), 32.0);
  const HartreeKernel K = make_kernel(g, 1.5);
  auto a = field(g.size());
  for (auto _ : state) {
    convolve_in_place(K, a);
    benchmark::DoNotOptimize(a.data());
  }
}

void BM_strang_step(benchmark::State& state) {
  const Grid g = make_grid(2, state.range(0), 32.0);
  const HartreeKernel K = make_kernel(g, 1.5);
  ComplexField u = gaussian(g, 2.0, 0.3);
  for (auto _ : state) {
    u = step_strang(u, 1e-3, K);
    benchmark::DoNotOptimize(u.values().data());
  }
}

void BM_order4_step(benchmark::State& state) {
  const Grid g = make_grid(2, state.range(0), 32.0);
  const HartreeKernel K = make_kernel(g, 1.5);
  ComplexField u = gaussian(g, 2.0, 0.3);
  for (auto _ : state) {
    u = step_order4(u, 1e-3, K);
    benchmark::DoNotOptimize(u.values().data());
  }
}

}  // namespace

BENCHMARK(BM_phase_multiply<false>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_phase_multiply<true>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_sum_abs2<false>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_sum_abs2<true>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_conj_product<false>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_conj_product<true>)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_convolve)->Arg(128)->Arg(256);
BENCHMARK(BM_strang_step)->Arg(128)->Arg(256);
BENCHMARK(BM_order4_step)->Arg(128)->Arg(256);
BENCHMARK_MAIN();
