#include "hartree/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace hartree::kernels {

namespace {

using index_t = std::ptrdiff_t;

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

// Block partials are computed in parallel and summed in order.
template <typename T, typename BlockFn>
T blocked_sum(std::size_t n, BlockFn&& fn) {
  const auto blocks = static_cast<index_t>(block_count(n));
  std::vector<T> partial(static_cast<std::size_t>(blocks), T{});
#pragma omp parallel for schedule(static)
  for (index_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = fn(lo, hi);
  }
  T total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

void scale(std::span<cplx> a, cplx s) {
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) a[i] *= s;
}

void multiply(std::span<cplx> a, std::span<const double> m) {
  assert(a.size() == m.size());
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) a[i] *= m[i];
}

void multiply(std::span<cplx> a, std::span<const cplx> m) {
  assert(a.size() == m.size());
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) a[i] *= m[i];
}

void phase_multiply(std::span<cplx> a, std::span<const double> v, double dt) {
  assert(a.size() == v.size());
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) a[i] *= unit_phase(-dt * v[i]);
}

void free_phase(std::span<cplx> a, std::span<const double> k2, double t) {
  assert(a.size() == k2.size());
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) a[i] *= unit_phase(-t * k2[i]);
}

void conj_product(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  assert(out.size() == a.size() && a.size() == b.size());
  const auto n = static_cast<index_t>(a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = a[i] * std::conj(b[i]);
}

void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x) {
  assert(y.size() == x.size());
  const auto n = static_cast<index_t>(y.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_abs2(std::span<const cplx> a) {
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::sum_abs2(a.subspan(lo, hi - lo));
  });
}

double sum_abs_pow(std::span<const cplx> a, double p) {
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::sum_abs_pow(a.subspan(lo, hi - lo), p);
  });
}

double sum_weighted_abs2(std::span<const cplx> a, std::span<const double> w) {
  assert(a.size() == w.size());
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::sum_weighted_abs2(a.subspan(lo, hi - lo), w.subspan(lo, hi - lo));
  });
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  return blocked_sum<cplx>(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::inner(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
  });
}

double max_abs(std::span<const cplx> a) {
  const auto blocks = static_cast<index_t>(block_count(a.size()));
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static)
  for (index_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(a.size(), lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = serial::max_abs(a.subspan(lo, hi - lo));
  }
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int threads) { omp_set_num_threads(std::max(1, threads)); }

namespace serial {

void scale(std::span<cplx> a, cplx s) {
  for (auto& x : a) x *= s;
}

void multiply(std::span<cplx> a, std::span<const double> m) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= m[i];
}

void multiply(std::span<cplx> a, std::span<const cplx> m) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= m[i];
}

void phase_multiply(std::span<cplx> a, std::span<const double> v, double dt) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= unit_phase(-dt * v[i]);
}

void free_phase(std::span<cplx> a, std::span<const double> k2, double t) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= unit_phase(-t * k2[i]);
}

void conj_product(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * std::conj(b[i]);
}

void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double sum_abs2(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s;
}

double sum_abs_pow(std::span<const cplx> a, double p) {
  double s = 0.0;
  for (const auto& x : a) s += std::pow(std::abs(x), p);
  return s;
}

double sum_weighted_abs2(std::span<const cplx> a, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::norm(a[i]);
  return s;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double max_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace serial

}  // namespace hartree::kernels
