#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hartree/field.hpp"
#include "hartree/hartree_kernel.hpp"
#include "hartree/trajectory.hpp"

namespace hartree {

/// Which end of [0, T] the Duhamel integral is anchored at.
///   final_state: N(a,b,c)(t) =  i int_t^T e^{i(t-s) Laplacian} T(a,b,c)(s) ds   (wave operator side)
///   initial:     N(a,b,c)(t) = -i int_0^t e^{i(t-s) Laplacian} T(a,b,c)(s) ds   (scattering map side)
enum class Anchor { initial, final_state };

const char* to_string(Anchor anchor);

/// Interaction-picture integrand e^{-is Laplacian} T(a(s), b(s), c(s)) on the shared grid.
/// Any argument may be an empty trajectory, which stands for zero.
std::vector<ComplexField> duhamel_integrand(const Trajectory& a, const Trajectory& b, const Trajectory& c,
                                            const HartreeKernel& kernel);

/// Adds `add` into `acc` sample by sample; `acc` may start empty.
void accumulate(std::vector<ComplexField>& acc, const std::vector<ComplexField>& add);

/// Cumulative trapezoid of an interaction-picture integrand, turned back into a
/// physical-picture Duhamel term.
Trajectory duhamel_from_integrand(const std::vector<ComplexField>& integrand, const std::vector<double>& times,
                                  Anchor anchor);

/// -i int_0^T integrand ds, the scattering-side limit of the initial-anchored term.
ComplexField duhamel_limit(const std::vector<ComplexField>& integrand, const std::vector<double>& times);

struct DuhamelTerm {
  Trajectory value;
  /// ||T(a,b,c)(T)||_2 T / (gamma - 1): the part of int_T^inf dropped by truncation,
  /// assuming the t^{-gamma} decay of the trilinear form along dispersing solutions.
  double tail_estimate = 0.0;
};

DuhamelTerm nonlinear_N(const Trajectory& a, const Trajectory& b, const Trajectory& c, const HartreeKernel& kernel,
                        Anchor anchor);

/// Distinct orderings of a multiset of three labels (1, 3 or 6 of them).
std::vector<std::array<int, 3>> distinct_permutations(std::array<int, 3> labels);

struct SymmetricSum {
  Trajectory value;
  int summands = 0;
};

/// Sum of N over the distinct orderings of three labelled trajectories.
SymmetricSum symmetric_sum_N(std::array<int, 3> labels, const std::vector<Trajectory>& pool,
                             const HartreeKernel& kernel, Anchor anchor);

/// sup over samples of ||a(t) - b(t)||_2.
double sup_distance(const Trajectory& a, const Trajectory& b);

/// Trajectory of zeros on the given times.
Trajectory zero_trajectory(const Grid& grid, const std::vector<double>& times);
/// e^{it Laplacian} v sampled on `times`.
Trajectory free_trajectory(const ComplexField& v, const std::vector<double>& times);
/// Uniform times t_i = i T / M, i = 0..M.
std::vector<double> uniform_times(double T, std::size_t intervals);

struct PicardOptions {
  double tol = 1e-8;
  int max_iterations = 200;
};

struct PicardResult {
  Trajectory solution;
  int iterations = 0;
  /// Ratio of the last two successive-iterate distances.
  double contraction = 0.0;
  /// Final successive-iterate distance relative to sup ||x||_2.
  double change = 0.0;
};

/// Solves x = base + map(x) by Picard iteration in sup-t L^2. Throws
/// ContractionFailure when the successive distances stop shrinking.
PicardResult picard(const Trajectory& base, const std::function<Trajectory(const Trajectory&)>& map,
                    const PicardOptions& options);

}  // namespace hartree
