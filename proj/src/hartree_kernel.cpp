#include "hartree/hartree_kernel.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "hartree/error.hpp"
#include "hartree/fft.hpp"
#include "hartree/kernels.hpp"
#include "hartree/quadrature.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

GaussLegendre::GaussLegendre(std::size_t points) : nodes(points), weights(points) {
  const std::size_t m = (points + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(points) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= points; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 - (static_cast<double>(j) - 1.0) * p3) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(points) * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[points - 1 - i] = z;
    weights[i] = weights[points - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

namespace {

// Radial profile of the kernel restricted to a ball:
//   F(Z) = int_0^Z z^p B(z) dz,  p = d - 1 - gamma,  B = J0 (d = 2) or cos (d = 1).
// The multiplier is S_d |xi|^{gamma-d} F(|xi| R). F is tabulated on a panel
// grid and refined with one Gauss-Legendre panel per query.
class TruncatedProfile {
 public:
  TruncatedProfile(int d, double gamma, double z_max)
      : d_(d), p_(d - 1.0 - gamma), rule_(16), first_rule_(32) {
    const auto panels = static_cast<std::size_t>(std::ceil(z_max / kPanel)) + 1;
    table_.assign(panels + 1, 0.0);
    table_[1] = first_panel(kPanel);
    for (std::size_t m = 1; m < panels; ++m)
      table_[m + 1] = table_[m] + panel(static_cast<double>(m) * kPanel, static_cast<double>(m + 1) * kPanel);
  }

  double operator()(double z) const {
    if (z <= 0.0) return 0.0;
    if (z < kPanel) return first_panel(z);
    const auto m = static_cast<std::size_t>(z / kPanel);
    if (m + 1 >= table_.size()) throw Error("truncated kernel profile queried beyond its table");
    return table_[m] + panel(static_cast<double>(m) * kPanel, z);
  }

 private:
  static constexpr double kPanel = 0.5;

  double radial(double z) const { return d_ == 2 ? std::cyl_bessel_j(0.0, z) : std::cos(z); }

  // z = h s^m with m = 1/(p+1) removes the z^p singularity.
  double first_panel(double h) const {
    const double m = 1.0 / (p_ + 1.0);
    const double integral = first_rule_.integrate([&](double s) { return radial(h * std::pow(s, m)); }, 0.0, 1.0);
    return std::pow(h, p_ + 1.0) / (p_ + 1.0) * integral;
  }

  double panel(double a, double b) const {
    return rule_.integrate([&](double z) { return std::pow(z, p_) * radial(z); }, a, b);
  }

  int d_;
  double p_;
  GaussLegendre rule_;
  GaussLegendre first_rule_;
  std::vector<double> table_;
};

std::vector<double> cell_average_symbol(const Grid& grid, double gamma) {
  const double c = riesz_constant(grid.dim, gamma);
  const double spacing = grid.frequency_spacing();
  const auto k2 = grid.wavenumber_squared();
  std::vector<double> out(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i)
    out[i] = i == 0 ? 0.0 : c * std::pow(k2[i], 0.5 * (gamma - grid.dim));
  // Average of c |xi|^{gamma-d} over the cell [-h, h]^d, h = spacing/2.
  const double h = 0.5 * spacing;
  if (grid.dim == 1) {
    out[0] = c * std::pow(h, gamma - 1.0) / gamma;
  } else {
    // int over square of r^{gamma-2} dA = 8 int_0^{pi/4} (h/cos)^gamma / gamma dtheta.
    const GaussLegendre rule(32);
    const double angular =
        rule.integrate([&](double th) { return std::pow(1.0 / std::cos(th), gamma); }, 0.0, std::numbers::pi / 4);
    out[0] = c * 8.0 * std::pow(h, gamma) / gamma * angular / (4.0 * h * h);
  }
  return out;
}

std::vector<double> truncated_symbol(const Grid& grid, double gamma, double radius) {
  const int d = grid.dim;
  const double surface = d == 2 ? 2.0 * std::numbers::pi : 2.0;
  const double spacing = grid.frequency_spacing();
  // Largest |xi| R on the lattice.
  const double xi_max = spacing * static_cast<double>(grid.n / 2) * std::sqrt(static_cast<double>(d));
  const TruncatedProfile profile(d, gamma, xi_max * radius);

  std::vector<double> out(grid.size());
  const double zero_value = surface * std::pow(radius, d - gamma) / (d - gamma);
  // |xi|^2 = spacing^2 * m with integer m; evaluate once per distinct m.
  std::unordered_map<long, double> memo;
  auto value_for = [&](long m) {
    if (m == 0) return zero_value;
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    const double xi = spacing * std::sqrt(static_cast<double>(m));
    const double v = surface * std::pow(xi, gamma - d) * profile(xi * radius);
    memo.emplace(m, v);
    return v;
  };
  if (d == 1) {
    for (std::size_t k = 0; k < grid.n; ++k) out[k] = value_for(grid.mode(k) * grid.mode(k));
  } else {
    for (std::size_t a = 0; a < grid.n; ++a)
      for (std::size_t b = 0; b < grid.n; ++b)
        out[a * grid.n + b] = value_for(grid.mode(a) * grid.mode(a) + grid.mode(b) * grid.mode(b));
  }
  return out;
}

void finalize(HartreeKernel& k) {
  const Grid& g = k.grid;
  k.applied = k.multiplier;
  const double inv = 1.0 / static_cast<double>(g.size());
  const long cutoff = static_cast<long>(g.n / 3);
  for (std::size_t i = 0; i < k.applied.size(); ++i) {
    bool keep = true;
    if (k.dealias) {
      if (g.dim == 1) {
        keep = std::abs(g.mode(i)) <= cutoff;
      } else {
        keep = std::abs(g.mode(i / g.n)) <= cutoff && std::abs(g.mode(i % g.n)) <= cutoff;
      }
    }
    k.applied[i] = keep ? k.applied[i] * inv : 0.0;
  }
}

}  // namespace

const char* to_string(ZeroModePolicy policy) {
  return policy == ZeroModePolicy::cell_average ? "cell_average" : "truncated_direct";
}

ZeroModePolicy parse_zero_mode_policy(const std::string& name) {
  if (name == "cell_average") return ZeroModePolicy::cell_average;
  if (name == "truncated_direct") return ZeroModePolicy::truncated_direct;
  throw ConfigError({"unknown zero-mode policy '" + name + "' (expected cell_average or truncated_direct)"});
}

double riesz_constant(int d, double gamma) {
  const double half_d = 0.5 * d;
  return std::pow(std::numbers::pi, half_d) * std::pow(2.0, d - gamma) * std::tgamma(0.5 * (d - gamma)) /
         std::tgamma(0.5 * gamma);
}

HartreeKernel HartreeKernel::zero(const Grid& grid) {
  HartreeKernel k;
  k.grid = grid;
  k.gamma = 0.0;
  k.dealias = false;
  k.multiplier.assign(grid.size(), 0.0);
  k.applied.assign(grid.size(), 0.0);
  return k;
}

bool HartreeKernel::is_zero() const {
  for (double m : multiplier)
    if (m != 0.0) return false;
  return true;
}

HartreeKernel make_kernel(const Grid& grid, double gamma, ZeroModePolicy policy, bool dealias,
                          double truncation_radius) {
  if (!(gamma > 0.0 && gamma < grid.dim))
    throw ConfigError({"kernel exponent must satisfy 0 < gamma < d (got gamma = " + std::to_string(gamma) +
                       ", d = " + std::to_string(grid.dim) + ")"});
  HartreeKernel k;
  k.grid = grid;
  k.gamma = gamma;
  k.policy = policy;
  k.dealias = dealias;
  if (policy == ZeroModePolicy::cell_average) {
    k.multiplier = cell_average_symbol(grid, gamma);
  } else {
    k.truncation_radius = truncation_radius > 0.0 ? truncation_radius : grid.half_width;
    k.multiplier = truncated_symbol(grid, gamma, k.truncation_radius);
  }
  finalize(k);
  return k;
}

void convolve_in_place(const HartreeKernel& kernel, std::span<cplx> data) {
  fft::forward(kernel.grid, data);
  kernels::multiply(data, kernel.applied);
  fft::inverse(kernel.grid, data);
}

ComplexField hartree_potential(const ComplexField& a, const ComplexField& b, const HartreeKernel& kernel) {
  require_same_grid(a.grid(), kernel.grid, "hartree_potential");
  require_same_grid(b.grid(), kernel.grid, "hartree_potential");
  const ComplexField pa = to_position(a);
  const ComplexField pb = to_position(b);
  ComplexField out(kernel.grid);
  kernels::conj_product(out.values(), pa.values(), pb.values());
  convolve_in_place(kernel, out.values());
  return out;
}

ComplexField trilinear_T(const ComplexField& u, const ComplexField& v, const ComplexField& w,
                         const HartreeKernel& kernel) {
  require_same_grid(w.grid(), kernel.grid, "trilinear_T");
  ComplexField out = hartree_potential(u, v, kernel);
  const ComplexField pw = to_position(w);
  kernels::multiply(out.values(), pw.values());
  if (kernel.dealias) dealias(out);
  return out;
}

}  // namespace hartree
