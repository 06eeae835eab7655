#include "hartree/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hartree/error.hpp"
#include "hartree/fft.hpp"
#include "hartree/functionals.hpp"
#include "hartree/kernels.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

void SolverConfig::validate() const {
  std::vector<std::string> v;
  if (!(dt > 0.0) || !std::isfinite(dt)) v.push_back("dt must be positive");
  if (t1 == t0) v.push_back("t1 must differ from t0");
  if (!(tol_mass > 0.0 && tol_mass < 1.0)) v.push_back("tol_mass must lie in (0, 1)");
  if (!(tol_energy > 0.0 && tol_energy < 1.0)) v.push_back("tol_energy must lie in (0, 1)");
  if (record_every == 0) v.push_back("record_every must be at least 1");
  if (!(T_max > 0.0)) v.push_back("T_max must be positive");
  if (std::abs(t0) > T_max || std::abs(t1) > T_max) v.push_back("time span must lie within the validity horizon T_max");
  if (!(wrap_radius_fraction > 0.0 && wrap_radius_fraction <= 1.0))
    v.push_back("wrap_radius_fraction must lie in (0, 1]");
  if (!(wrap_tol > 0.0)) v.push_back("wrap_tol must be positive");
  if (order != 2 && order != 4) v.push_back("order must be 2 or 4");
  if (!v.empty()) throw ConfigError(v);
}

std::size_t SolverConfig::steps() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::abs(t1 - t0) / dt)));
}

double SolverConfig::step() const { return (t1 - t0) / static_cast<double>(steps()); }

namespace {

void kinetic(ComplexField& u, const std::vector<double>& k2, double tau) { free_propagate_inplace(u, k2, tau); }

double relative_drift(double value, double reference) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

constexpr double kYoshida1 = 1.3512071919596578;   // 1 / (2 - 2^{1/3})
constexpr double kYoshida0 = -1.7024143839193153;  // -2^{1/3} / (2 - 2^{1/3})

}  // namespace

void nonlinear_phase(ComplexField& u, double dt, const HartreeKernel& kernel) {
  if (kernel.is_zero()) return;
  std::vector<cplx> rho(u.size());
  auto v = u.values();
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(v[i]);
  convolve_in_place(kernel, rho);
  std::vector<double> pot(rho.size());
  for (std::size_t i = 0; i < pot.size(); ++i) pot[i] = rho[i].real();
  kernels::phase_multiply(v, pot, dt);
}

ComplexField step_strang(const ComplexField& u, double dt, const HartreeKernel& kernel) {
  require_same_grid(u.grid(), kernel.grid, "step_strang");
  ComplexField out = to_position(u);
  const auto k2 = out.grid().wavenumber_squared();
  kinetic(out, k2, 0.5 * dt);
  nonlinear_phase(out, dt, kernel);
  kinetic(out, k2, 0.5 * dt);
  return out;
}

ComplexField step_order4(const ComplexField& u, double dt, const HartreeKernel& kernel) {
  ComplexField out = step_strang(u, kYoshida1 * dt, kernel);
  out = step_strang(out, kYoshida0 * dt, kernel);
  return step_strang(out, kYoshida1 * dt, kernel);
}

Trajectory evolve(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel,
                  EvolveDiagnostics* diagnostics) {
  cfg.validate();
  require_same_grid(u0.grid(), kernel.grid, "evolve");
  const std::size_t n = cfg.steps();
  const double h = cfg.step();
  const auto k2 = u0.grid().wavenumber_squared();
  const double wrap_radius = cfg.wrap_radius_fraction * u0.grid().half_width;

  EvolveDiagnostics diag;
  diag.steps = n;
  diag.dt_used = h;
  Trajectory traj;
  ComplexField u = to_position(u0);
  const double m0 = mass(u);
  const double e0 = cfg.check_energy ? energy(u, kernel) : 0.0;

  auto record = [&](double t) {
    const double m = mass(u);
    const double dm = relative_drift(m, m0);
    diag.times.push_back(t);
    diag.mass.push_back(m);
    diag.max_mass_drift = std::max(diag.max_mass_drift, dm);
    if (dm > cfg.tol_mass)
      throw SolverAlarm("evolve: relative mass drift " + std::to_string(dm) + " at t = " + std::to_string(t) +
                        " exceeds tol_mass");
    if (cfg.check_energy) {
      const double e = energy(u, kernel);
      const double de = relative_drift(e, e0);
      diag.energy.push_back(e);
      diag.max_energy_drift = std::max(diag.max_energy_drift, de);
      if (de > cfg.tol_energy)
        throw SolverAlarm("evolve: relative energy drift " + std::to_string(de) + " at t = " + std::to_string(t) +
                          " exceeds tol_energy");
    }
    if (m0 > 0.0) {
      const double w = mass_fraction_outside(u, wrap_radius);
      diag.max_wrap_fraction = std::max(diag.max_wrap_fraction, w);
      if (w > cfg.wrap_tol)
        throw SolverAlarm("evolve: wrap-around monitor breached at t = " + std::to_string(t) + " (mass fraction " +
                          std::to_string(w) + " outside radius " + std::to_string(wrap_radius) + ")");
    }
    traj.push(t, u);
  };

  record(cfg.t0);
  bool owed = false;  // a kinetic half-step is pending
  for (std::size_t s = 1; s <= n; ++s) {
    const double t = (s == n) ? cfg.t1 : cfg.t0 + static_cast<double>(s) * h;
    const bool store = (s % cfg.record_every == 0) || s == n;
    if (cfg.order == 4) {
      u = step_order4(u, h, kernel);
    } else {
      kinetic(u, k2, owed ? h : 0.5 * h);
      nonlinear_phase(u, h, kernel);
      owed = !store;
      if (store) kinetic(u, k2, 0.5 * h);
    }
    if (store) record(t);
  }
  if (diagnostics) *diagnostics = std::move(diag);
  return traj;
}

Trajectory interaction_profile(const Trajectory& traj) {
  if (traj.picture != Picture::physical) throw Error("interaction_profile: trajectory is not in the physical picture");
  Trajectory out;
  out.picture = Picture::interaction;
  for (std::size_t i = 0; i < traj.size(); ++i) out.push(traj.times[i], free_propagate(traj.fields[i], -traj.times[i]));
  return out;
}

Trajectory physical_profile(const Trajectory& traj) {
  if (traj.picture != Picture::interaction) throw Error("physical_profile: trajectory is not in the interaction picture");
  Trajectory out;
  for (std::size_t i = 0; i < traj.size(); ++i) out.push(traj.times[i], free_propagate(traj.fields[i], traj.times[i]));
  return out;
}

}  // namespace hartree
