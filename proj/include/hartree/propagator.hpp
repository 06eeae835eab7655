#pragma once

#include <limits>
#include <vector>

#include "hartree/field.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/trajectory.hpp"

namespace hartree {

struct SolverConfig {
  double dt = 1e-2;
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t record_every = 1;
  /// Relative mass drift that aborts the run.
  double tol_mass = 1e-9;
  /// Relative energy drift that aborts the run (checked only when check_energy).
  double tol_energy = 1e-2;
  bool check_energy = false;
  bool dealias = true;
  /// Times beyond |t| = T_max are rejected.
  double T_max = std::numeric_limits<double>::infinity();
  /// Wrap-around monitor: mass outside |x| < wrap_radius_fraction * L must stay below wrap_tol.
  double wrap_radius_fraction = 0.5;
  double wrap_tol = 1e-6;
  /// 2 = Strang, 4 = triple-jump composition of Strang steps.
  int order = 2;

  /// Throws ConfigError listing every violated constraint.
  void validate() const;
  std::size_t steps() const;
  /// Signed step actually used: (t1 - t0) / steps().
  double step() const;
};

struct EvolveDiagnostics {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;  // empty unless check_energy
  double max_mass_drift = 0.0;
  double max_energy_drift = 0.0;
  double max_wrap_fraction = 0.0;
  std::size_t steps = 0;
  double dt_used = 0.0;
};

/// One Strang step: half kinetic, full nonlinear phase, half kinetic.
ComplexField step_strang(const ComplexField& u, double dt, const HartreeKernel& kernel);
/// Fourth-order composition of three Strang steps.
ComplexField step_order4(const ComplexField& u, double dt, const HartreeKernel& kernel);

/// Multiplies u by exp(-i dt V), V = |x|^{-gamma} * |u|^2. Position layout, in place.
void nonlinear_phase(ComplexField& u, double dt, const HartreeKernel& kernel);

/// Integrates from t0 to t1 (backward when t1 < t0), storing t0, every
/// record_every-th step and t1. Throws SolverAlarm on a conservation or wrap breach.
Trajectory evolve(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel,
                  EvolveDiagnostics* diagnostics = nullptr);

/// e^{-it Laplacian} u(t) per sample.
Trajectory interaction_profile(const Trajectory& traj);
/// Inverse of interaction_profile.
Trajectory physical_profile(const Trajectory& traj);

}  // namespace hartree
