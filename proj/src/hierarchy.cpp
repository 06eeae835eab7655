#include "hartree/hierarchy.hpp"

#include <cmath>
#include <string>

#include "hartree/error.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

namespace {

bool is_zero(const Trajectory& t) {
  for (const auto& f : t.fields)
    if (f.max_abs() != 0.0) return false;
  return true;
}

// Integrand of SN(u, u, w) = N(u,u,w) + N(u,w,u) + N(w,u,u).
std::vector<ComplexField> linear_part(const Trajectory& u, const Trajectory& w, const HartreeKernel& kernel) {
  std::vector<ComplexField> g;
  accumulate(g, duhamel_integrand(u, u, w, kernel));
  accumulate(g, duhamel_integrand(u, w, u, kernel));
  accumulate(g, duhamel_integrand(w, u, u, kernel));
  return g;
}

std::size_t index_of(const std::vector<double>& times, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(times.back()));
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= tol) return i;
  throw Error("extract_plus: no stored sample at t = " + std::to_string(t));
}

}  // namespace

PicardResult solve_base(const ComplexField& data, const std::vector<double>& times, const HartreeKernel& kernel,
                        const HierarchyOptions& options) {
  const Trajectory base = free_trajectory(data, times);
  if (data.max_abs() == 0.0 || kernel.is_zero()) return PicardResult{base, 0, 0.0, 0.0};
  return picard(
      base,
      [&](const Trajectory& u) {
        return duhamel_from_integrand(duhamel_integrand(u, u, u, kernel), times, options.anchor);
      },
      options.picard);
}

PicardResult solve_w1(const Trajectory& u, const ComplexField& v, const HartreeKernel& kernel,
                      const HierarchyOptions& options) {
  const Trajectory base = free_trajectory(v, u.times);
  if (is_zero(u) || kernel.is_zero()) return PicardResult{base, 0, 0.0, 0.0};
  return picard(
      base,
      [&](const Trajectory& w) { return duhamel_from_integrand(linear_part(u, w, kernel), u.times, options.anchor); },
      options.picard);
}

PicardResult solve_wN(HierarchyCoefficients& coeffs, int N, const HartreeKernel& kernel,
                      const HierarchyOptions& options) {
  if (N < 2) throw Error("solve_wN: N must be at least 2");
  if (coeffs.order() != N - 1)
    throw Error("solve_wN: coefficients w_0..w_" + std::to_string(N - 1) + " must be computed first");
  const Trajectory& u = coeffs.w[0];
  const auto& times = u.times;

  std::vector<ComplexField> source;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      const int l = N - j - k;
      if (l < 0 || l >= N) continue;
      accumulate(source, duhamel_integrand(coeffs.w[j], coeffs.w[k], coeffs.w[l], kernel));
    }
  const Trajectory base =
      source.empty() ? zero_trajectory(u.grid(), times) : duhamel_from_integrand(source, times, options.anchor);

  PicardResult r;
  if (is_zero(u) || kernel.is_zero()) {
    r.solution = base;
  } else {
    r = picard(
        base,
        [&](const Trajectory& w) { return duhamel_from_integrand(linear_part(u, w, kernel), times, options.anchor); },
        options.picard);
  }
  coeffs.w.push_back(r.solution);
  coeffs.contraction.push_back(r.contraction);
  return r;
}

double fit_geometric_rate(const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!(y[k] > 0.0)) continue;
    const double x = static_cast<double>(k + 1);
    const double ly = std::log(y[k]);
    sx += x;
    sy += ly;
    sxx += x * x;
    sxy += x * ly;
    ++n;
  }
  if (n < 2) throw Error("fit_geometric_rate: need at least two positive entries");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

HierarchyCoefficients solve_hierarchy(const ComplexField& data, const ComplexField& v, int K,
                                      const std::vector<double>& times, const HartreeKernel& kernel,
                                      const HierarchyOptions& options) {
  if (K < 1) throw Error("solve_hierarchy: order must be at least 1");
  HierarchyCoefficients c;
  c.anchor = options.anchor;
  auto base = solve_base(data, times, kernel, options);
  c.w.push_back(std::move(base.solution));
  c.contraction.push_back(base.contraction);
  auto w1 = solve_w1(c.w[0], v, kernel, options);
  c.w.push_back(std::move(w1.solution));
  c.contraction.push_back(w1.contraction);
  for (int N = 2; N <= K; ++N) solve_wN(c, N, kernel, options);

  const auto exps = make_exponents(kernel.gamma, kernel.grid.dim);
  std::vector<double> sup_norms;
  for (int k = 0; k <= K; ++k) {
    const Trajectory& wk = c.w[k];
    c.w_plus.push_back(free_propagate(wk.fields.back(), -wk.times.back()));
    NormLedger l;
    l.time = wk.times.back();
    l.set("Linf_L2", sup_l2(wk));
    if (kernel.gamma > 0.0 && kernel.gamma < 2.0 * kernel.grid.dim) l.set("Lq_Lr", spacetime_norm(wk, exps.q, exps.r).value);
    l.set("plus_L2", c.w_plus.back().l2_norm());
    if (k >= 1) sup_norms.push_back(l.at("Linf_L2"));
    c.ledger.push_back(std::move(l));
  }
  int positive = 0;
  for (double s : sup_norms) positive += s > 1e-300;
  if (positive >= 2) c.Lambda_fit = fit_geometric_rate(sup_norms);
  return c;
}

PlusExtraction extract_plus(const Trajectory& wk, double gamma) {
  if (wk.size() < 3) throw Error("extract_plus: trajectory too short");
  PlusExtraction p;
  p.T = wk.times.back();
  const std::size_t iT = wk.size() - 1;
  const std::size_t i2 = index_of(wk.times, 0.5 * p.T);
  const std::size_t i4 = index_of(wk.times, 0.25 * p.T);
  p.value = free_propagate(wk.fields[iT], -wk.times[iT]);
  const ComplexField half = free_propagate(wk.fields[i2], -wk.times[i2]);
  const ComplexField quarter = free_propagate(wk.fields[i4], -wk.times[i4]);
  p.diff_T = (p.value - half).l2_norm();
  p.diff_half = (half - quarter).l2_norm();
  const double kappa = 2.0 * gamma / (4.0 - gamma);
  p.bound_ratio = std::pow(2.0, 1.0 - kappa);
  p.tail_estimate = p.diff_T / (std::pow(2.0, kappa - 1.0) - 1.0);
  if (p.diff_T <= 1e-12 * p.value.l2_norm() && p.diff_half <= 1e-12 * p.value.l2_norm()) {
    p.tail_ratio = 0.0;
    p.extrapolated = p.value;
    p.observed_rate = 0.0;
    return p;
  }
  p.tail_ratio = p.diff_half > 0.0 ? p.diff_T / p.diff_half : kInfinity;
  p.cauchy = p.tail_ratio < 1.0;
  if (!p.cauchy)
    throw Error("extract_plus: interaction profile is not Cauchy (difference ratio " + std::to_string(p.tail_ratio) +
                ")");
  p.observed_rate = std::max(-std::log2(p.tail_ratio), kappa - 1.0);
  p.extrapolated = p.value;
  p.extrapolated.add_scaled(1.0 / (std::pow(2.0, p.observed_rate) - 1.0), p.value - half);
  return p;
}

}  // namespace hartree
