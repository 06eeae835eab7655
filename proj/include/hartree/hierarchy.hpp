#pragma once

#include <vector>

#include "hartree/duhamel.hpp"
#include "hartree/functionals.hpp"

namespace hartree {

struct HierarchyOptions {
  Anchor anchor = Anchor::final_state;
  PicardOptions picard{1e-10, 200};
};

/// Perturbation coefficients of the solution map around u on one shared time grid.
/// w[0] is the base solution u; w_plus[k] is the interaction-picture value at the
/// far end of the grid.
struct HierarchyCoefficients {
  Anchor anchor = Anchor::final_state;
  std::vector<Trajectory> w;
  std::vector<ComplexField> w_plus;
  /// Per order: sup_t ||w_k||_2 ("Linf_L2") and the L^q_t L^r_x norm ("Lq_Lr").
  std::vector<NormLedger> ledger;
  std::vector<double> contraction;
  double Lambda_fit = 0.0;

  int order() const { return static_cast<int>(w.size()) - 1; }
};

/// w_0 = u: for final_state, u = e^{it Laplacian} data + N(u,u,u) with data the
/// final state; for initial, data is u(0).
PicardResult solve_base(const ComplexField& data, const std::vector<double>& times, const HartreeKernel& kernel,
                        const HierarchyOptions& options);

/// w_1 = e^{it Laplacian} v + SN(u, u, w_1).
PicardResult solve_w1(const Trajectory& u, const ComplexField& v, const HartreeKernel& kernel,
                      const HierarchyOptions& options);

/// w_N for N >= 2: lower-order triples form the source, the three orderings of
/// (u, u, w_N) form the fixed-point part. Appends to `coeffs`.
PicardResult solve_wN(HierarchyCoefficients& coeffs, int N, const HartreeKernel& kernel,
                      const HierarchyOptions& options);

/// Solves w_0..w_K, fills w_plus, the ledger and Lambda_fit.
HierarchyCoefficients solve_hierarchy(const ComplexField& data, const ComplexField& v, int K,
                                      const std::vector<double>& times, const HartreeKernel& kernel,
                                      const HierarchyOptions& options);

/// Least-squares rate: exp of the slope of log y_k against k over the positive
/// entries (k starting at 1).
double fit_geometric_rate(const std::vector<double>& y);

struct PlusExtraction {
  /// e^{-iT Laplacian} w(T) at the last stored time.
  ComplexField value;
  /// Richardson combination of the values at T and T/2 using the observed rate.
  ComplexField extrapolated;
  double T = 0.0;
  /// ||P(T) - P(T/2)||_2 and ||P(T/2) - P(T/4)||_2.
  double diff_T = 0.0;
  double diff_half = 0.0;
  /// diff_T / diff_half, and the same ratio predicted by int t^{-2 gamma/(4-gamma)} dt.
  double tail_ratio = 0.0;
  double bound_ratio = 0.0;
  double observed_rate = 0.0;
  /// diff_T / (2^{kappa - 1} - 1) with kappa = 2 gamma / (4 - gamma).
  double tail_estimate = 0.0;
  bool cauchy = true;
};

/// Needs samples at T, T/2 and T/4 on the trajectory's grid. Throws when the
/// profile differences do not shrink.
PlusExtraction extract_plus(const Trajectory& wk, double gamma);

}  // namespace hartree
