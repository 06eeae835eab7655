#include "hartree/far_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hartree/error.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

namespace {

double radius_of(const std::vector<double>& r2, std::span<const cplx> values, double fraction) {
  std::vector<std::pair<double, double>> pts(r2.size());
  double total = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    pts[i] = {r2[i], std::norm(values[i])};
    total += pts[i].second;
  }
  if (total == 0.0) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double outside = 0.0;
  for (const auto& [rr, m] : pts) {
    if (outside + m > fraction * total) return std::sqrt(rr);
    outside += m;
  }
  return 0.0;
}

}  // namespace

double mass_radius(const ComplexField& f, double fraction) {
  const ComplexField p = to_position(f);
  return radius_of(p.grid().radius_squared(), p.values(), fraction);
}

double frequency_radius(const ComplexField& f, double fraction) {
  const ComplexField p = to_position(f);
  const ComplexField s = transform(p, Direction::forward);
  return radius_of(p.grid().wavenumber_squared(), s.values(), fraction);
}

FarField::FarField(const ComplexField& phi, const HartreeKernel& dual_kernel)
    : phi_(to_position(phi)), kernel_(&dual_kernel) {
  require_same_grid(dual_kernel.grid, dual_grid(phi_.grid()), "FarField");
}

ComplexField FarField::profile(double t) const {
  if (!(t > 0.0)) throw Error("FarField: t must be positive");
  const Grid& g = phi_.grid();
  const ComplexField spec = transform(apply_M(phi_, t), Direction::forward);
  const double scale = std::pow(g.dx(), g.dim) * std::sqrt(static_cast<double>(g.size())) *
                       std::pow(2.0 * std::numbers::pi, -0.5 * g.dim);
  ComplexField out(kernel_->grid);
  const std::size_t n = g.n;
  const std::size_t h = n / 2;
  auto src = spec.values();
  auto dst = out.values();
  if (g.dim == 1) {
    for (std::size_t k = 0; k < n; ++k) dst[(k + h) % n] = scale * src[k];
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) dst[((a + h) % n) * n + (b + h) % n] = scale * src[a * n + b];
  }
  return out;
}

double FarField::Q(double t) const {
  return std::pow(2.0 * t, -kernel_->gamma) * potential_Q(profile(t), *kernel_);
}

double FarField::lebesgue_norm(double t, double r) const {
  const int d = phi_.grid().dim;
  const double e = std::isinf(r) ? -0.5 * d : -0.5 * d + d / r;
  return std::pow(2.0 * t, e) * hartree::lebesgue_norm(profile(t), r);
}

namespace {

// Trapezoid and its Richardson refinement on samples y over nodes x.
std::pair<double, double> trapezoid_pair(const std::vector<double>& x, const std::vector<double>& y) {
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) fine += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  for (std::size_t i = 2; i < x.size(); i += 2) coarse += 0.5 * (x[i] - x[i - 2]) * (y[i] + y[i - 2]);
  return {fine, (4.0 * fine - coarse) / 3.0};
}

}  // namespace

FreeEnergyResult free_energy_integral(const ComplexField& v_in, const HartreeKernel& kernel,
                                      const FreeEnergyOptions& opt) {
  if (opt.near_intervals % 2 != 0 || opt.near_intervals == 0) throw Error("free_energy_integral: near_intervals must be even");
  const ComplexField v = to_position(v_in);
  require_same_grid(v.grid(), kernel.grid, "free_energy_integral");
  FreeEnergyResult r;
  if (v.max_abs() == 0.0 || kernel.is_zero()) return r;
  const Grid& g = v.grid();
  const double gamma = kernel.gamma;
  if (!(gamma > 1.0)) throw Error("free_energy_integral: the time integral converges only for gamma > 1");

  double ts = opt.t_switch;
  if (ts <= 0.0) {
    const double R = mass_radius(v, 1e-12);
    const double k = frequency_radius(v, 1e-12);
    const double room = 0.5 * std::numbers::pi / g.dx() - k;
    if (!(room > 0.0)) throw Error("free_energy_integral: profile is not resolved by the grid spacing");
    ts = 1.25 * R / (2.0 * room);
  }
  r.t_switch = ts;

  const HartreeKernel dual = make_kernel(dual_grid(g), gamma, kernel.policy, kernel.dealias);
  const FarField far(v, dual);

  std::vector<double> xs, ys;
  const std::size_t m = opt.near_intervals;
  ComplexField at_switch;
  for (std::size_t i = 0; i <= m; ++i) {
    const double t = ts * static_cast<double>(i) / static_cast<double>(m);
    const ComplexField u = free_propagate(v, t);
    xs.push_back(t);
    ys.push_back(potential_Q(u, kernel));
    if (i == m) at_switch = u;
  }
  const auto [near_trap, near_rich] = trapezoid_pair(xs, ys);
  const double q_direct = ys.back();
  r.wrap_fraction = mass_fraction_outside(at_switch, 0.5 * g.half_width);

  const std::size_t decades = static_cast<std::size_t>(std::ceil(std::log10(opt.far_factor)));
  std::size_t intervals = std::max<std::size_t>(2, decades * opt.per_decade);
  if (intervals % 2) ++intervals;
  const double log_span = std::log(opt.far_factor);
  std::vector<double> us, fs;
  double q_switch_far = 0.0, q_horizon = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double u = log_span * static_cast<double>(i) / static_cast<double>(intervals);
    const double t = ts * std::exp(u);
    const double q = far.Q(t);
    if (i == 0) q_switch_far = q;
    if (i == intervals) q_horizon = q;
    us.push_back(u);
    fs.push_back(q * t);
  }
  const auto [far_trap, far_rich] = trapezoid_pair(us, fs);
  r.horizon = ts * opt.far_factor;
  r.tail = q_horizon * r.horizon / (gamma - 1.0);
  r.near = near_rich;
  r.far = far_rich;
  r.value = r.near + r.far + r.tail;
  r.trapezoid = near_trap + far_trap + r.tail;
  r.relative_tail = r.value > 0.0 ? r.tail / r.value : 0.0;
  r.reliable = r.relative_tail <= opt.tail_limit;
  r.switch_mismatch = q_direct > 0.0 ? std::abs(q_direct - q_switch_far) / q_direct : 0.0;
  return r;
}

}  // namespace hartree
