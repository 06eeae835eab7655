#pragma once

#include <vector>

namespace hartree {

/// Index range of the recursion a_N = C sum_{j+k+l=N, j,k,l != N} a_j a_k a_l.
/// from_one: indices start at 1. from_zero: index 0 allowed with the given a_0.
enum class IndexConvention { from_one, from_zero };

/// <k>^2 = 1 + k^2.
inline double japanese_sq(double k) { return 1.0 + k * k; }

/// C_2 = sum_{k>=0} <k>^{-2} = (1 + pi coth pi) / 2.
double gronwall_C2();

struct GronwallSequence {
  double C = 1.0;
  double a1 = 1.0;
  IndexConvention convention = IndexConvention::from_one;
  double a0 = 0.0;
  /// a[N-1] = a_N for N = 1..count.
  std::vector<double> a;
  /// C_1 = (9 C C_2^2)^{-1/2}; C_0 chosen so that C_1 C_0 = <1>^2 = 2.
  double C1 = 0.0;
  double C0 = 0.0;
  /// Smallest C_0 for which <N>^2 a_N <= C_1 (C_0 a_1)^N holds on the computed range.
  double C0_min = 0.0;
  /// Plain and strengthened forms hold for every computed N.
  bool plain_holds = false;
  bool strengthened_holds = false;
  /// Largest <N>^2 a_N / (C_1 (C_0 a_1)^N).
  double worst_ratio = 0.0;
  /// a_N^{1/N} for the last N.
  double growth_rate = 0.0;
};

GronwallSequence gronwall_sequence(double C, double a1, int count,
                                   IndexConvention convention = IndexConvention::from_one, double a0 = 0.0);

/// Reference recursion by enumerating every ordered index triple.
std::vector<double> gronwall_bruteforce(double C, double a1, int count, IndexConvention convention, double a0 = 0.0);

}  // namespace hartree
