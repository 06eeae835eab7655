#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hartree/far_field.hpp"
#include "hartree/fit.hpp"
#include "hartree/functionals.hpp"
#include "hartree/hartree_kernel.hpp"

namespace hartree {

/// Smallest power-of-two grid with spacing dx whose half-width is at least `half_width`.
Grid grid_for_half_width(int d, double dx, double half_width);

/// amplitude * exp(-|x|^2 / (2 width^2)).
ComplexField gaussian(const Grid& grid, double width, double amplitude = 1.0);

/// v_{eps,sigma}(x) = eps sigma^{-d/2} v(x / sigma) resampled onto `target` by
/// periodic-sinc interpolation of v (taken as zero outside its own box). Throws
/// when the scaled 1e-8 mass radius exceeds cap * L of the target box.
ComplexField make_scaled(const ComplexField& v, double eps, double sigma, const Grid& target, double cap = 0.25);
ComplexField make_scaled(const ComplexField& v, double eps, double sigma);

/// Half-width needed so that the 1e-8 mass radius of v_{1,sigma} is at most L/4.
double scaled_half_width(const ComplexField& v, double sigma);

/// Half-width keeping the free evolution of v_{1,sigma} (1e-8 mass radius) inside
/// |x| < L/2 up to time T.
double spread_half_width(const ComplexField& v, double sigma, double T);

// Free-energy scaling sweep.

struct ScalingConfig {
  double gamma = 1.5;
  std::vector<double> epsilons{0.25, 0.5, 1.0};
  std::vector<double> sigmas{2.0, 4.0, 8.0};
  double dx = 0.5;
  ZeroModePolicy policy = ZeroModePolicy::truncated_direct;
  bool dealias = true;
  FreeEnergyOptions integral{};
};

struct ScalingRow {
  double eps = 1.0;
  double sigma = 1.0;
  std::size_t n = 0;
  double half_width = 0.0;
  double integral = 0.0;
  double relative_tail = 0.0;
  bool reliable = true;
  double switch_mismatch = 0.0;
  double mass = 0.0;
  double sigma_norm = 0.0;
};

struct ScalingResult {
  ScalingConfig config;
  std::vector<ScalingRow> rows;
  FitReport eps_fit;
  FitReport sigma_fit;
  double eps_reference = 4.0;
  double sigma_reference = 0.0;  // 2 - gamma
};

/// Base profile `v` (on its own grid) is rescaled for every schedule point. The
/// eps sweep runs at the first sigma; the sigma sweep runs at eps = 1.
ScalingResult scaling_sweep(const ComplexField& v, const ScalingConfig& cfg);

// Breakdown at the origin.

struct BreakdownConfig {
  double gamma = 1.5;
  double j = 2.3;
  double s = 2.9;
  std::vector<double> sigmas{4.0, 8.0, 16.0};
  double dx = 1.0;
  /// Horizon T_sigma = horizon_factor * sigma^2 for the remainder march.
  double horizon_factor = 0.75;
  std::size_t steps = 150;
  /// Largest allowed eps * sigma.
  double max_eps_sigma = 0.2;
  FreeEnergyOptions integral{};
};

/// Throws ConfigError listing the violated schedule conditions.
void validate_breakdown(const BreakdownConfig& cfg);

struct BreakdownRow {
  double sigma = 0.0;
  double eps = 0.0;
  std::size_t n = 0;
  double v_norm = 0.0;
  /// (1/||v||_2) int_0^inf Q(e^{is Laplacian} v) ds.
  double main = 0.0;
  /// sup_t ||u^eps - eps w_1 - eps^3 w_3||_2 over the march, and eps^5 ||w_5^+||_2.
  double remainder3 = 0.0;
  double w5_term = 0.0;
  double e_proxy = 0.0;
  double lower = 0.0;
  double ratio = 0.0;
  bool reliable = true;
};

struct BreakdownResult {
  BreakdownConfig config;
  std::vector<BreakdownRow> rows;
  std::vector<double> slopes;
  FitReport fit;
  double expected_slope = 0.0;  // (s - 3) j + 2 - gamma
  bool monotone = false;
};

BreakdownResult breakdown_origin(const ComplexField& v, const BreakdownConfig& cfg);

// Off-origin decomposition of w_3^+.

struct OffOriginConfig {
  double gamma = 1.5;
  std::vector<double> sigmas{2.0, 4.0, 8.0};
  /// Fixed eps for the decoupled sweep.
  double eps = 0.05;
  /// When set, eps = sigma^{-j} instead.
  std::optional<double> j;
  double s = 2.9;
  double dx = 0.5;
  double horizon_factor = 0.75;
  std::size_t steps = 150;
  double u0_width = 4.0;
  /// Amplitude ladder for u0. Every amplitude is run at every sigma.
  std::vector<double> u0_amplitudes{0.02, 0.01, 0.005};
  /// Calibrated small-data radius; ||u0||_Sigma must stay below it.
  double radius = 0.0;
};

void validate_off_origin(const OffOriginConfig& cfg);

struct OffOriginRow {
  double sigma = 0.0;
  double eps = 0.0;
  double u0_amplitude = 0.0;
  double u0_sigma_norm = 0.0;
  std::size_t n = 0;
  double linear = 0.0;    // eps^3 ||SN(u,u,w3)^+||
  double mixed = 0.0;     // eps^3 ||SN(u,w1,w2)^+||
  double resonant = 0.0;  // eps^3 ||N(w1,w1,w1)^+||
  double ratio = 0.0;     // (linear + mixed) / resonant
  double w3_plus = 0.0;
  double parts_mismatch = 0.0;  // ||parts sum - w3^+|| / ||w3^+||
  double series_ratio = 0.0;    // ||S(u0 + v) - S(u0) - w1^+ - w2^+|| / ||v||^s
  double tau = 0.0;
};

struct OffOriginResult {
  OffOriginConfig config;
  std::vector<OffOriginRow> rows;    // every (amplitude, sigma) pair
  std::vector<OffOriginRow> sweep;   // sigma sweep at the smallest amplitude
  std::vector<OffOriginRow> ladder;  // amplitude ladder at the largest sigma
  FitReport resonant_fit;
  double resonant_reference = 0.0;  // 2 - gamma
  /// Slope of log(ratio) against log ||u0||_Sigma over the ladder, and C_fit = max ratio / ||u0||_Sigma^2 on it.
  double ladder_slope = 0.0;
  double C_fit = 0.0;
  /// max over all rows of ratio / (C_fit ||u0||_Sigma^2).
  double bound_usage = 0.0;
};

OffOriginResult breakdown_off_origin(const ComplexField& v, const OffOriginConfig& cfg);

}  // namespace hartree
