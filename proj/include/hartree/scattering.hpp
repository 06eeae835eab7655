#pragma once

#include <map>
#include <utility>

#include "hartree/duhamel.hpp"
#include "hartree/propagator.hpp"

namespace hartree {

struct ScatterResult {
  /// Interaction profile at T_used.
  ComplexField u_plus;
  /// Richardson combination across T_used and T_used / 2 (scattering_state only).
  ComplexField u_plus_extrapolated;
  double T_used = 0.0;
  /// Estimated ||profile(inf) - profile(T)||_2 from the t^{-2 gamma/(4 - gamma)} tail rate.
  double tail_estimate = 0.0;
  /// ||profile(T) - profile(T/2)|| / ||profile(T/2) - profile(T/4)||.
  double tail_ratio = 0.0;
  int iterations = 0;
  double contraction = 0.0;
};

/// Evolves u0 on [0, cfg.t1] and returns e^{-iT Laplacian} u(T). cfg.t0 must be 0
/// and the step count divisible by 4.
ScatterResult scattering_state(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel);

/// Picard iteration for u(t) = e^{it Laplacian} u_plus + i int_t^T e^{i(t-s) Laplacian} T(u,u,u) ds
/// on the grid of step cfg.dt over [0, cfg.t1]; returns u(0).
ScatterResult wave_operator(const ComplexField& u_plus, const SolverConfig& cfg, const HartreeKernel& kernel,
                            const PicardOptions& picard_options = {});

struct RoundTrip {
  double wave_after_scatter = 0.0;  // ||W(S(u0)) - u0|| / ||u0||
  double scatter_after_wave = 0.0;  // ||S(W(u0)) - u0|| / ||u0||
  ScatterResult scatter;
  ScatterResult wave;
};

RoundTrip roundtrip_check(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel,
                          const PicardOptions& picard_options = {});

struct RadiusCalibration {
  /// Sigma norm of the largest tested amplitude whose Picard factor is <= 1/2.
  double radius = 0.0;
  std::vector<double> sigma_norms;
  std::vector<double> factors;
};

/// Scales `profile` through an amplitude ladder and measures the wave-operator
/// contraction factor at each amplitude.
RadiusCalibration calibrate_radius(const ComplexField& profile, const SolverConfig& cfg, const HartreeKernel& kernel,
                                   const std::vector<double>& amplitudes);

/// Calibrated small-data radii keyed by (d, gamma).
class RadiusTable {
 public:
  void store(int d, double gamma, double radius) { table_[{d, gamma}] = radius; }
  bool contains(int d, double gamma) const { return table_.count({d, gamma}) > 0; }
  double at(int d, double gamma) const;
  const std::map<std::pair<int, double>, double>& entries() const { return table_; }

 private:
  std::map<std::pair<int, double>, double> table_;
};

}  // namespace hartree
