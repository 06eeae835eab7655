#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hartree/field.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/trajectory.hpp"

namespace hartree {

/// Exponent bundle for the coefficient estimates:
///   r = 4d/(2d - gamma), q = 8/gamma, alpha = 8/(4 - gamma), theta = gamma/4.
/// (q, r) is Schrodinger-admissible and 1/q' = 1/q + 2/alpha.
struct StrichartzExponents {
  double gamma = 1.5;
  int d = 2;
  double r = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double theta = 0.0;

  /// 2/q + d/r - d/2; zero for an admissible pair.
  double admissibility_defect() const;
  /// 1/q' - 1/q - 2/alpha.
  double holder_defect() const;
  /// d (r - 2) / (2 r), the decay exponent for this r.
  double decay_exponent() const;
  /// Exponent 2 gamma / (4 - gamma) of the tail integrand t^{-2 gamma/(4 - gamma)}.
  double tail_exponent() const { return 2.0 * gamma / (4.0 - gamma); }
};

StrichartzExponents make_exponents(double gamma, int d);

/// Named norm values at one time. Identifiers: mass, energy, Q, L2, grad_L2,
/// x_L2, H1, FH1, Sigma, Lr, spacetime-q-r.
struct NormLedger {
  double time = 0.0;
  std::map<std::string, double> values;

  void set(const std::string& name, double value);
  double at(const std::string& name) const;
};

double mass(const ComplexField& u);
/// Q(u) = 1/4 <(|x|^{-gamma} * |u|^2) u, u>.
double potential_Q(const ComplexField& u, const HartreeKernel& kernel);
/// 1/2 ||grad u||^2 + Q(u).
double energy(const ComplexField& u, const HartreeKernel& kernel);
/// ||u||_r for 1 <= r < inf; r = inf gives the sup norm.
double lebesgue_norm(const ComplexField& u, double r);

/// ||u||_2, ||grad u||_2, ||x u||_2, H1 = sqrt(L2^2 + grad^2), FH1 = sqrt(L2^2 + x^2),
/// Sigma = H1 + ||x u||_2.
NormLedger weighted_norms(const ComplexField& u, double time = 0.0);

struct DecayRow {
  double t = 0.0;
  double norm_r = 0.0;
  double norm_2 = 0.0;
  double J_norm = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double wrap_fraction = 0.0;
};

struct DecayTable {
  std::vector<DecayRow> rows;
  /// Largest ratio ||e^{it Laplacian} phi||_r / bound over the rows.
  double constant = 0.0;
  /// Log-log slope of ||e^{it Laplacian} phi||_r over the last two rows.
  double tail_slope = 0.0;
};

/// Compares ||e^{it Laplacian} phi||_r with t^{-theta} ||phi||^{1-theta} ||J(t) e^{it Laplacian} phi||^theta.
DecayTable decay_check(const ComplexField& phi, const std::vector<double>& times, const StrichartzExponents& exps);

struct SpacetimeNorm {
  double value = 0.0;
  /// Trapezoid on every sample combined with every other sample, (4 I_h - I_2h)/3.
  double richardson = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// L^q_t L^r_x by composite trapezoid in t over the stored samples. q = inf
/// is the max over samples (a lower bound of the true sup).
SpacetimeNorm spacetime_norm(const Trajectory& traj, double q, double r);

/// sup over samples of ||f(t)||_2.
double sup_l2(const Trajectory& traj);

}  // namespace hartree
