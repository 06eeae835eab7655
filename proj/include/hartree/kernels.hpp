#pragma once

// Pointwise and reduction loops shared by every module.
//
// The functions in `hartree::kernels` are OpenMP-parallel; `hartree::kernels::serial`
// holds the straight-line reference versions they are tested and benchmarked against.
// Reductions sum fixed-size blocks and then combine the block partials in index
// order, so results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>

namespace hartree::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kReductionBlock = 4096;

void scale(std::span<cplx> a, cplx s);
void multiply(std::span<cplx> a, std::span<const double> m);
void multiply(std::span<cplx> a, std::span<const cplx> m);
/// a *= exp(-i * dt * v), v real.
void phase_multiply(std::span<cplx> a, std::span<const double> v, double dt);
/// a *= exp(-i * t * k2), the free propagator symbol for e^{it Laplacian}.
void free_phase(std::span<cplx> a, std::span<const double> k2, double t);
/// out = a * conj(b).
void conj_product(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
/// y += alpha * x.
void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x);

double sum_abs2(std::span<const cplx> a);
double sum_abs_pow(std::span<const cplx> a, double p);
/// sum of w_i |a_i|^2.
double sum_weighted_abs2(std::span<const cplx> a, std::span<const double> w);
/// sum of a_i * conj(b_i).
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double max_abs(std::span<const cplx> a);

namespace serial {
void scale(std::span<cplx> a, cplx s);
void multiply(std::span<cplx> a, std::span<const double> m);
void multiply(std::span<cplx> a, std::span<const cplx> m);
void phase_multiply(std::span<cplx> a, std::span<const double> v, double dt);
void free_phase(std::span<cplx> a, std::span<const double> k2, double t);
void conj_product(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x);
double sum_abs2(std::span<const cplx> a);
double sum_abs_pow(std::span<const cplx> a, double p);
double sum_weighted_abs2(std::span<const cplx> a, std::span<const double> w);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double max_abs(std::span<const cplx> a);
}  // namespace serial

/// Number of OpenMP threads used by the parallel kernels.
int thread_count();
void set_thread_count(int threads);

}  // namespace hartree::kernels
