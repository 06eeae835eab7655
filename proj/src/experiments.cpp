#include "hartree/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hartree/error.hpp"
#include "hartree/spectral.hpp"
#include "hartree/taylor.hpp"

namespace hartree {

Grid grid_for_half_width(int d, double dx, double half_width) {
  if (!(dx > 0.0) || !(half_width > 0.0)) throw ConfigError({"grid spacing and half-width must be positive"});
  std::size_t n = 16;
  while (0.5 * static_cast<double>(n) * dx < half_width * (1.0 - 1e-12)) n *= 2;
  return make_grid(d, n, 0.5 * static_cast<double>(n) * dx);
}

ComplexField gaussian(const Grid& grid, double width, double amplitude) {
  const double c = -0.5 / (width * width);
  return ComplexField::sample(grid, [&](double x, double y) { return cplx(amplitude * std::exp(c * (x * x + y * y))); });
}

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Periodic sinc weights from the source samples to the points y_t = x_t / sigma.
Eigen::MatrixXd sinc_weights(const Grid& src, const Grid& dst, double sigma) {
  const std::size_t ns = src.n, nt = dst.n;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(ns));
  const double n = static_cast<double>(ns);
  for (std::size_t t = 0; t < nt; ++t) {
    const double y = dst.coordinate(t) / sigma;
    if (y < -src.half_width || y >= src.half_width) continue;
    for (std::size_t j = 0; j < ns; ++j) {
      const double s = (y - src.coordinate(j)) / src.dx();
      const double r = std::round(s);
      double w;
      if (std::abs(s - r) < 1e-13) {
        w = (static_cast<long>(r) % static_cast<long>(ns) == 0) ? 1.0 : 0.0;
      } else {
        w = std::sin(std::numbers::pi * s) / (n * std::tan(std::numbers::pi * s / n));
      }
      W(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = w;
    }
  }
  return W;
}

double spread_radius(double R, double k, double T) { return std::sqrt(R * R + 4.0 * T * T * k * k); }

}  // namespace

double scaled_half_width(const ComplexField& v, double sigma) { return 4.0 * sigma * mass_radius(v, 1e-8); }

double spread_half_width(const ComplexField& v, double sigma, double T) {
  return 2.0 * spread_radius(sigma * mass_radius(v, 1e-8), frequency_radius(v, 1e-8) / sigma, T);
}

ComplexField make_scaled(const ComplexField& v_in, double eps, double sigma, const Grid& target, double cap) {
  if (!(sigma > 0.0)) throw Error("make_scaled: sigma must be positive");
  const ComplexField v = to_position(v_in);
  const Grid& src = v.grid();
  if (target.dim != src.dim) throw Error("make_scaled: dimension mismatch");
  const double radius = sigma * mass_radius(v, 1e-8);
  if (radius > cap * 2.0 * target.half_width)
    throw Error("make_scaled: sigma = " + std::to_string(sigma) + " is too large for the box (scaled mass radius " +
                std::to_string(radius) + " exceeds " + std::to_string(cap * 2.0 * target.half_width) + ")");
  const double factor = eps * std::pow(sigma, -0.5 * src.dim);
  const Eigen::MatrixXd W = sinc_weights(src, target, sigma);
  std::vector<cplx> out(target.size());
  if (src.dim == 1) {
    Eigen::Map<const Eigen::VectorXcd> x(v.values().data(), static_cast<Eigen::Index>(src.n));
    Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(target.n));
    y = factor * (W.cast<cplx>() * x);
  } else {
    const auto ns = static_cast<Eigen::Index>(src.n), nt = static_cast<Eigen::Index>(target.n);
    Eigen::Map<const RowMat> V(v.values().data(), ns, ns);
    Eigen::Map<RowMat> Y(out.data(), nt, nt);
    const Eigen::MatrixXcd Wc = W.cast<cplx>();
    Y = factor * (Wc * V * Wc.transpose());
  }
  return ComplexField(target, std::move(out));
}

ComplexField make_scaled(const ComplexField& v, double eps, double sigma) {
  return make_scaled(v, eps, sigma, v.grid());
}

ScalingResult scaling_sweep(const ComplexField& v, const ScalingConfig& cfg) {
  if (cfg.sigmas.empty() || cfg.epsilons.empty()) throw ConfigError({"scaling sweep needs eps and sigma schedules"});
  ScalingResult out;
  out.config = cfg;
  out.sigma_reference = 2.0 - cfg.gamma;
  std::vector<FitPoint> eps_pts, sigma_pts;
  for (std::size_t i = 0; i < cfg.sigmas.size(); ++i) {
    const double sigma = cfg.sigmas[i];
    const Grid g = grid_for_half_width(v.grid().dim, cfg.dx, scaled_half_width(v, sigma));
    const HartreeKernel K = make_kernel(g, cfg.gamma, cfg.policy, cfg.dealias);
    std::vector<double> eps_list{1.0};
    if (i == 0)
      for (double e : cfg.epsilons)
        if (e != 1.0) eps_list.push_back(e);
    for (double eps : eps_list) {
      const ComplexField f = make_scaled(v, eps, sigma, g);
      const FreeEnergyResult I = free_energy_integral(f, K, cfg.integral);
      ScalingRow row;
      row.eps = eps;
      row.sigma = sigma;
      row.n = g.n;
      row.half_width = g.half_width;
      row.integral = I.value;
      row.relative_tail = I.relative_tail;
      row.reliable = I.reliable;
      row.switch_mismatch = I.switch_mismatch;
      row.mass = mass(f);
      row.sigma_norm = weighted_norms(f).at("Sigma");
      out.rows.push_back(row);
      if (i == 0) eps_pts.push_back({eps, sigma, I.value});
      if (eps == 1.0) sigma_pts.push_back({eps, sigma, I.value});
    }
  }
  if (eps_pts.size() >= 2) out.eps_fit = fit_exponents(eps_pts, FitModel::eps_power);
  if (sigma_pts.size() >= 2) out.sigma_fit = fit_exponents(sigma_pts, FitModel::sigma_power);
  return out;
}

void validate_breakdown(const BreakdownConfig& c) {
  std::vector<std::string> v;
  const double g = c.gamma;
  if (!(g > 4.0 / 3.0 && g < 2.0)) v.push_back("γ must lie in (4/3, 2)");
  const double s_min = (5.0 + 5.0 * g) / (3.0 + g);
  if (!(c.s > s_min)) v.push_back("s must exceed (5+5γ)/(3+γ) = " + std::to_string(s_min));
  if (!(c.j > (3.0 + g) / 2.0)) v.push_back("j must exceed (3+γ)/2 = " + std::to_string((3.0 + g) / 2.0));
  if (c.s < 3.0 && !(c.j < (2.0 - g) / (3.0 - c.s)))
    v.push_back("j must stay below (2-γ)/(3-s) = " + std::to_string((2.0 - g) / (3.0 - c.s)));
  if (c.sigmas.size() < 2) v.push_back("need at least two sigma values");
  for (double s : c.sigmas) {
    if (!(s > 1.0)) v.push_back("sigma must exceed 1");
    const double es = std::pow(s, 1.0 - c.j);
    if (!(es <= c.max_eps_sigma))
      v.push_back("eps*sigma = " + std::to_string(es) + " at sigma = " + std::to_string(s) +
                  " violates eps*sigma << 1 (limit " + std::to_string(c.max_eps_sigma) + ")");
  }
  if (c.steps == 0) v.push_back("steps must be positive");
  if (!v.empty()) throw ConfigError(v);
}

BreakdownResult breakdown_origin(const ComplexField& v, const BreakdownConfig& cfg) {
  validate_breakdown(cfg);
  BreakdownResult out;
  out.config = cfg;
  out.expected_slope = (cfg.s - 3.0) * cfg.j + 2.0 - cfg.gamma;
  const int d = v.grid().dim;
  std::vector<double> sig, ratio;
  for (double sigma : cfg.sigmas) {
    BreakdownRow row;
    row.sigma = sigma;
    row.eps = std::pow(sigma, -cfg.j);

    // Main term on a grid fine enough for the far-field switch.
    const double dx_int = std::min(cfg.dx, 0.5);
    const double R = sigma * mass_radius(v, 1e-12);
    const double k = frequency_radius(v, 1e-12) / sigma;
    const double t_sw = 1.25 * R / (2.0 * (0.5 * std::numbers::pi / dx_int - k));
    const Grid gi = grid_for_half_width(d, dx_int, std::max(2.0 * spread_radius(R, k, t_sw), 2.5 * R));
    const HartreeKernel Ki = make_kernel(gi, cfg.gamma);
    const ComplexField fi = make_scaled(v, row.eps, sigma, gi, 0.5);
    row.v_norm = fi.l2_norm();
    const FreeEnergyResult I = free_energy_integral(fi, Ki, cfg.integral);
    row.main = I.value / row.v_norm;
    row.reliable = I.reliable;

    // Order-5 remainder on the march grid.
    const double T = cfg.horizon_factor * sigma * sigma;
    const Grid gm = grid_for_half_width(d, cfg.dx, spread_half_width(v, sigma, T));
    row.n = gm.n;
    const HartreeKernel Km = make_kernel(gm, cfg.gamma);
    const ComplexField v1 = make_scaled(v, 1.0, sigma, gm, 0.5);
    TaylorOptions opt;
    opt.order = 5;
    opt.T = T;
    opt.steps = cfg.steps;
    opt.companions = {row.eps};
    const TaylorResult tr = taylor_march(ComplexField(gm), v1, Km, opt);
    row.remainder3 = tr.remainder[0][3];
    row.w5_term = std::pow(row.eps, 5) * tr.w_plus[5].l2_norm();
    row.e_proxy = std::max(row.remainder3, row.w5_term);
    row.lower = row.main - row.e_proxy;
    row.ratio = row.lower / std::pow(row.v_norm, cfg.s);
    out.rows.push_back(row);
    sig.push_back(sigma);
    ratio.push_back(row.ratio);
  }
  bool positive = true;
  for (double r : ratio) positive = positive && r > 0.0;
  if (positive) {
    out.slopes = consecutive_slopes(sig, ratio);
    out.monotone = std::all_of(out.slopes.begin(), out.slopes.end(), [](double s) { return s > 0.0; });
    std::vector<FitPoint> pts;
    for (std::size_t i = 0; i < sig.size(); ++i) pts.push_back({1.0, sig[i], ratio[i]});
    out.fit = fit_exponents(pts, FitModel::sigma_power);
  }
  return out;
}

void validate_off_origin(const OffOriginConfig& c) {
  std::vector<std::string> v;
  const double g = c.gamma;
  if (!(g > 4.0 / 3.0 && g < 2.0)) v.push_back("γ must lie in (4/3, 2)");
  const double s_min = (4.0 + 4.0 * g) / (2.0 + g);
  if (!(c.s > s_min)) v.push_back("s must exceed (4+4γ)/(2+γ) = " + std::to_string(s_min));
  if (c.j && !(*c.j > 2.0 + g)) v.push_back("j must exceed 2+γ = " + std::to_string(2.0 + g));
  if (!c.j && !(c.eps > 0.0 && c.eps < 1.0)) v.push_back("eps must lie in (0, 1)");
  if (c.sigmas.size() < 2) v.push_back("need at least two sigma values");
  if (c.u0_amplitudes.empty()) v.push_back("need at least one u0 amplitude");
  for (double a : c.u0_amplitudes)
    if (!(a > 0.0)) v.push_back("u0 amplitudes must be positive");
  if (!(c.radius > 0.0)) v.push_back("a calibrated small-data radius is required");
  if (c.steps == 0) v.push_back("steps must be positive");
  if (!v.empty()) throw ConfigError(v);
}

namespace {

OffOriginRow off_origin_point(const ComplexField& v, const OffOriginConfig& cfg, double sigma, double amplitude) {
  OffOriginRow row;
  row.sigma = sigma;
  row.eps = cfg.j ? std::pow(sigma, -*cfg.j) : cfg.eps;
  row.u0_amplitude = amplitude;
  const int d = v.grid().dim;
  const double T = cfg.horizon_factor * sigma * sigma;
  const double dx = std::min(cfg.dx * sigma / 2.0, 1.0);
  const Grid probe = grid_for_half_width(d, 0.25 * cfg.u0_width, 4.0 * cfg.u0_width * 4.3);
  const ComplexField u0_probe = gaussian(probe, cfg.u0_width, 1.0);
  const double half = std::max(spread_half_width(v, sigma, T), spread_half_width(u0_probe, 1.0, T));
  const Grid g = grid_for_half_width(d, std::max(dx, cfg.dx), half);
  row.n = g.n;
  const HartreeKernel K = make_kernel(g, cfg.gamma);
  const ComplexField u0 = gaussian(g, cfg.u0_width, amplitude);
  row.u0_sigma_norm = weighted_norms(u0).at("Sigma");
  if (row.u0_sigma_norm >= cfg.radius)
    throw ConfigError({"||u0||_Σ = " + std::to_string(row.u0_sigma_norm) + " is not below the calibrated radius " +
                       std::to_string(cfg.radius)});
  const ComplexField v1 = make_scaled(v, 1.0, sigma, g, 0.5);
  TaylorOptions opt;
  opt.order = 3;
  opt.T = T;
  opt.steps = cfg.steps;
  opt.companions = {row.eps};
  opt.w3_parts = true;
  opt.profile_checkpoints = 16;
  const TaylorResult tr = taylor_march(u0, v1, K, opt);
  const double e3 = std::pow(row.eps, 3);
  row.linear = e3 * tr.parts->linear.l2_norm();
  row.mixed = e3 * tr.parts->mixed.l2_norm();
  row.resonant = e3 * tr.parts->resonant.l2_norm();
  row.ratio = (row.linear + row.mixed) / row.resonant;
  const ComplexField sum = tr.parts->linear + tr.parts->mixed + tr.parts->resonant;
  row.w3_plus = e3 * tr.w_plus[3].l2_norm();
  row.parts_mismatch = (sum - tr.w_plus[3]).l2_norm() / tr.w_plus[3].l2_norm();
  row.series_ratio = tr.remainder_final[0][2] / std::pow(row.eps * v1.l2_norm(), cfg.s);
  row.tau = tr.profile_times.back();
  for (std::size_t i = 0; i < tr.profile_gap.size(); ++i)
    if (tr.profile_gap[i] < 0.1) {
      row.tau = tr.profile_times[i];
      break;
    }
  return row;
}

}  // namespace

OffOriginResult breakdown_off_origin(const ComplexField& v, const OffOriginConfig& cfg) {
  validate_off_origin(cfg);
  OffOriginResult out;
  out.config = cfg;
  out.resonant_reference = 2.0 - cfg.gamma;
  const double smallest = *std::min_element(cfg.u0_amplitudes.begin(), cfg.u0_amplitudes.end());
  const double largest_sigma = *std::max_element(cfg.sigmas.begin(), cfg.sigmas.end());
  for (double a : cfg.u0_amplitudes)
    for (double sigma : cfg.sigmas) {
      out.rows.push_back(off_origin_point(v, cfg, sigma, a));
      if (a == smallest) out.sweep.push_back(out.rows.back());
      if (sigma == largest_sigma) out.ladder.push_back(out.rows.back());
    }

  if (out.sweep.size() >= 3) {
    std::vector<FitPoint> pts;
    for (const auto& r : out.sweep) pts.push_back({r.eps, r.sigma, r.resonant / std::pow(r.eps, 3)});
    out.resonant_fit = fit_exponents(pts, FitModel::sigma_power);
  }
  for (const auto& r : out.ladder) out.C_fit = std::max(out.C_fit, r.ratio / (r.u0_sigma_norm * r.u0_sigma_norm));
  if (out.ladder.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : out.ladder) {
      x.push_back(r.u0_sigma_norm);
      y.push_back(r.ratio);
    }
    if (out.ladder.size() >= 3) {
      std::vector<FitPoint> pts;
      for (std::size_t i = 0; i < x.size(); ++i) pts.push_back({x[i], 1.0, y[i]});
      out.ladder_slope = fit_exponents(pts, FitModel::eps_power).slope;
    } else {
      out.ladder_slope = consecutive_slopes(x, y).front();
    }
  }
  for (const auto& r : out.rows)
    out.bound_usage = std::max(out.bound_usage, r.ratio / (out.C_fit * r.u0_sigma_norm * r.u0_sigma_norm));
  return out;
}

}  // namespace hartree
