#pragma once

#include <optional>
#include <vector>

#include "hartree/field.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/trajectory.hpp"

namespace hartree {

// Exact eps-Taylor coefficients of the Strang map applied to u0 + eps v.
//
// With A the kinetic half-step, one step reads y = A u, u <- A (exp(-i dt V[y]) y).
// Expanding y = sum eps^n y_n gives |y|^2 = sum eps^n rho_n, rho_n = sum_{j+k=n} y_j conj(y_k),
// V_n = K * rho_n, and the phase factor E = exp(-i dt V) obeys
//   E_0 = exp(-i dt V_0),  n E_n = sum_{k=1..n} k (-i dt V_k) E_{n-k}.
// The coefficients march step by step with no stored history.

struct TaylorOptions {
  int order = 3;
  double T = 1.0;
  std::size_t steps = 100;
  std::size_t record_every = 1;
  /// Directly evolved solutions with data u0 + eps v, compared against partial sums.
  std::vector<double> companions;
  /// Accumulate the three parts of w_3^+ (needs order >= 3).
  bool w3_parts = false;
  /// Store every recorded w_k(t).
  bool keep_trajectories = false;
  /// Times (on the record grid) at which w_1's interaction profile is checkpointed.
  std::size_t profile_checkpoints = 0;
};

struct W3Parts {
  /// -i int_0^T e^{-is Laplacian} (...) ds for SN(u,u,w3), SN(u,w1,w2), N(w1,w1,w1).
  ComplexField linear;
  ComplexField mixed;
  ComplexField resonant;
};

struct TaylorResult {
  std::vector<double> record_times;
  std::vector<Trajectory> w;                // filled when keep_trajectories
  std::vector<ComplexField> w_final;        // w_k(T)
  std::vector<ComplexField> w_plus;         // e^{-iT Laplacian} w_k(T)
  std::vector<double> sup_norm;             // sup over records of ||w_k||_2
  std::vector<bool> vanishes;               // structurally zero orders
  /// remainder[c][N] = sup_t ||u^eps - sum_{k<=N} eps^k w_k||_2 for companion c.
  std::vector<std::vector<double>> remainder;
  /// The same at t = T only.
  std::vector<std::vector<double>> remainder_final;
  std::vector<ComplexField> companion_final;
  std::optional<W3Parts> parts;
  /// Checkpoint times and ||w_1^+ - e^{-is Laplacian} w_1(s)||_2 / ||w_1^+||_2 at them.
  std::vector<double> profile_times;
  std::vector<double> profile_gap;
};

TaylorResult taylor_march(const ComplexField& u0, const ComplexField& v, const HartreeKernel& kernel,
                          const TaylorOptions& options);

}  // namespace hartree
