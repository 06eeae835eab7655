#include "hartree/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hartree/error.hpp"

namespace hartree {

double gronwall_C2() {
  const double pi = std::numbers::pi;
  return 0.5 * (1.0 + pi / std::tanh(pi));
}

namespace {

// b[k] = a_k for k = 0..N with a_N masked; returns sum over j+k+l = N of b_j b_k b_l.
double triple_sum(const std::vector<double>& b, int N) {
  std::vector<double> pair(N + 1, 0.0);
  for (int j = 0; j <= N; ++j)
    for (int k = 0; j + k <= N; ++k) pair[j + k] += b[j] * b[k];
  double s = 0.0;
  for (int l = 0; l <= N; ++l) s += b[l] * pair[N - l];
  return s;
}

}  // namespace

GronwallSequence gronwall_sequence(double C, double a1, int count, IndexConvention convention, double a0) {
  if (!(C > 0.0) || !(a1 > 0.0)) throw Error("gronwall_sequence: C and a1 must be positive");
  if (count < 1) throw Error("gronwall_sequence: need at least one term");
  GronwallSequence g;
  g.C = C;
  g.a1 = a1;
  g.convention = convention;
  g.a0 = convention == IndexConvention::from_zero ? a0 : 0.0;
  std::vector<double> b(count + 1, 0.0);
  b[0] = g.a0;
  b[1] = a1;
  g.a.push_back(a1);
  for (int N = 2; N <= count; ++N) {
    b[N] = 0.0;
    b[N] = C * triple_sum(b, N);
    g.a.push_back(b[N]);
  }
  const double C2 = gronwall_C2();
  g.C1 = 1.0 / std::sqrt(9.0 * C * C2 * C2);
  g.C0 = 2.0 / g.C1;

  g.plain_holds = g.strengthened_holds = true;
  double log_c0_min = -INFINITY;
  for (int N = 1; N <= count; ++N) {
    const double aN = g.a[N - 1];
    const double bound_log = std::log(g.C1) + N * std::log(g.C0 * a1);
    if (aN > 0.0) {
      const double lhs = std::log(japanese_sq(N) * aN);
      // Relative slack for rounding in the recursion.
      const double slack = 1e-12 * N;
      if (std::log(aN) > bound_log + slack) g.plain_holds = false;
      if (lhs > bound_log + slack) g.strengthened_holds = false;
      g.worst_ratio = std::max(g.worst_ratio, std::exp(lhs - bound_log));
      log_c0_min = std::max(log_c0_min, (lhs - std::log(g.C1)) / N - std::log(a1));
    }
  }
  g.C0_min = std::exp(log_c0_min);
  const double last = g.a.back();
  g.growth_rate = last > 0.0 ? std::exp(std::log(last) / count) : 0.0;
  return g;
}

std::vector<double> gronwall_bruteforce(double C, double a1, int count, IndexConvention convention, double a0) {
  std::vector<double> b(count + 1, 0.0);
  b[0] = convention == IndexConvention::from_zero ? a0 : 0.0;
  b[1] = a1;
  const int lo = convention == IndexConvention::from_zero ? 0 : 1;
  for (int N = 2; N <= count; ++N) {
    double s = 0.0;
    for (int j = lo; j <= N; ++j)
      for (int k = lo; k <= N; ++k) {
        const int l = N - j - k;
        if (l < lo || j == N || k == N || l == N) continue;
        s += b[j] * b[k] * b[l];
      }
    b[N] = C * s;
  }
  return std::vector<double>(b.begin() + 1, b.end());
}

}  // namespace hartree
