#pragma once

#include <span>
#include <string>
#include <vector>

#include "hartree/field.hpp"

namespace hartree {

/// How the Fourier symbol of |x|^{-gamma} is realized on the lattice.
enum class ZeroModePolicy {
  /// Continuum Riesz symbol c |xi|^{gamma-d}; the xi = 0 value is the average
  /// of the symbol over the fundamental frequency cell.
  cell_average,
  /// Exact Fourier transform of |x|^{-gamma} restricted to |x| < R (R = L by
  /// default). For densities supported in |x| < L/2 the periodic convolution
  /// then equals the free-space convolution.
  truncated_direct,
};

const char* to_string(ZeroModePolicy policy);
ZeroModePolicy parse_zero_mode_policy(const std::string& name);

/// Fourier multiplier of the convolution kernel |x|^{-gamma} on one grid.
struct HartreeKernel {
  Grid grid;
  double gamma = 0.0;
  ZeroModePolicy policy = ZeroModePolicy::truncated_direct;
  bool dealias = true;
  double truncation_radius = 0.0;  // truncated_direct only
  /// Symbol samples in FFT order; nonnegative and finite for a valid kernel.
  std::vector<double> multiplier;
  /// `multiplier` with the 2/3-rule mask folded in when dealiasing, scaled by
  /// 1/N so a forward/inverse FFT pair yields the convolution directly.
  std::vector<double> applied;

  /// Kernel identically zero: the free Schrodinger equation.
  static HartreeKernel zero(const Grid& grid);
  bool is_zero() const;
};

/// Riesz constant c with FT(|x|^{-gamma}) = c |xi|^{gamma-d}, FT(f)(xi) = int f e^{-i x xi}.
double riesz_constant(int d, double gamma);

/// Requires 0 < gamma < d. `truncation_radius <= 0` selects R = L.
HartreeKernel make_kernel(const Grid& grid, double gamma,
                          ZeroModePolicy policy = ZeroModePolicy::truncated_direct,
                          bool dealias = true, double truncation_radius = 0.0);

/// In-place periodic convolution of position-layout samples with the kernel
/// (applies the 2/3 mask to the input when the kernel dealiases).
void convolve_in_place(const HartreeKernel& kernel, std::span<cplx> data);

/// |x|^{-gamma} * (a conj(b)).
ComplexField hartree_potential(const ComplexField& a, const ComplexField& b, const HartreeKernel& kernel);

/// T(u, v, w) = (|x|^{-gamma} * (u conj(v))) w; the product is dealiased when the kernel is.
ComplexField trilinear_T(const ComplexField& u, const ComplexField& v, const ComplexField& w,
                         const HartreeKernel& kernel);

}  // namespace hartree
