#pragma once

#include "hartree/field.hpp"
#include "hartree/hartree_kernel.hpp"

namespace hartree {

// Large-time evaluation of the free flow through the lens identity
//   e^{it Laplacian} phi(x) = (4 pi i t)^{-d/2} e^{i|x|^2/4t} psi^(x / 2t),  psi = e^{i|y|^2/4t} phi,
// which gives Q(e^{it Laplacian} phi) = (2t)^{-gamma} Q(g_t) with g_t = (2 pi)^{-d/2} psi^ sampled
// on the dual grid, and ||e^{it Laplacian} phi||_r = (2t)^{-d/2 + d/r} ||g_t||_r.

/// Smallest radius outside which at most `fraction` of the mass lies.
double mass_radius(const ComplexField& f, double fraction);
/// The same for the frequency distribution |f^(xi)|^2.
double frequency_radius(const ComplexField& f, double fraction);

class FarField {
 public:
  /// `dual_kernel` must live on dual_grid(phi.grid()).
  FarField(const ComplexField& phi, const HartreeKernel& dual_kernel);

  /// g_t on the dual grid.
  ComplexField profile(double t) const;
  double Q(double t) const;
  double lebesgue_norm(double t, double r) const;

 private:
  ComplexField phi_;
  const HartreeKernel* kernel_;
};

struct FreeEnergyOptions {
  /// Switch time from direct to far-field evaluation; 0 picks one from the data.
  double t_switch = 0.0;
  std::size_t near_intervals = 64;
  /// Far-field quadrature runs to far_factor * t_switch.
  double far_factor = 1e6;
  std::size_t per_decade = 32;
  /// Tail above this fraction of the value marks the result unreliable.
  double tail_limit = 0.05;
};

struct FreeEnergyResult {
  double value = 0.0;
  double near = 0.0;
  double far = 0.0;
  double tail = 0.0;
  /// Plain trapezoid value, without the Richardson step.
  double trapezoid = 0.0;
  double t_switch = 0.0;
  double horizon = 0.0;
  double relative_tail = 0.0;
  bool reliable = true;
  /// |Q_direct - Q_far| / Q_direct at t_switch.
  double switch_mismatch = 0.0;
  /// Mass fraction outside L/2 for the direct flow at t_switch.
  double wrap_fraction = 0.0;
};

/// int_0^inf Q(e^{is Laplacian} v) ds: direct evaluation on [0, t_switch], lens
/// evaluation on a logarithmic grid beyond, and the t^{-gamma} tail past the horizon.
FreeEnergyResult free_energy_integral(const ComplexField& v, const HartreeKernel& kernel,
                                      const FreeEnergyOptions& options = {});

}  // namespace hartree
