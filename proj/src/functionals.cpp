#include "hartree/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "hartree/error.hpp"
#include "hartree/kernels.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

void Trajectory::push(double t, ComplexField f) {
  times.push_back(t);
  fields.push_back(std::move(f));
}

void Trajectory::validate() const {
  if (times.size() != fields.size()) throw Error("trajectory: times/fields length mismatch");
  if (times.size() < 2) return;
  const bool increasing = times[1] > times[0];
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (increasing ? !(times[i] > times[i - 1]) : !(times[i] < times[i - 1]))
      throw Error("trajectory: times are not strictly monotone");
    require_same_grid(fields[0].grid(), fields[i].grid(), "trajectory");
  }
}

double StrichartzExponents::admissibility_defect() const { return 2.0 / q + d / r - 0.5 * d; }

double StrichartzExponents::holder_defect() const { return (1.0 - 1.0 / q) - 1.0 / q - 2.0 / alpha; }

double StrichartzExponents::decay_exponent() const { return d * (r - 2.0) / (2.0 * r); }

StrichartzExponents make_exponents(double gamma, int d) {
  StrichartzExponents e;
  e.gamma = gamma;
  e.d = d;
  e.r = 4.0 * d / (2.0 * d - gamma);
  e.q = 8.0 / gamma;
  e.alpha = 8.0 / (4.0 - gamma);
  e.theta = gamma / 4.0;
  return e;
}

void NormLedger::set(const std::string& name, double value) {
  if (!std::isfinite(value) || value < 0.0) throw Error("norm ledger: '" + name + "' is negative or not finite");
  values[name] = value;
}

double NormLedger::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw Error("norm ledger: no entry '" + name + "'");
  return it->second;
}

double mass(const ComplexField& u) { return to_position(u).l2_norm_squared(); }

double potential_Q(const ComplexField& u, const HartreeKernel& kernel) {
  const ComplexField pu = to_position(u);
  const ComplexField v = hartree_potential(pu, pu, kernel);
  std::vector<double> re(v.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = v[i].real();
  return 0.25 * kernels::sum_weighted_abs2(pu.values(), re) * pu.grid().cell_volume();
}

namespace {

// ||grad u||_2 from the same |xi|^2 symbol the propagator uses, Nyquist modes included.
double gradient_norm(const ComplexField& u) {
  const ComplexField spec = transform(to_position(u), Direction::forward);
  return std::sqrt(kernels::sum_weighted_abs2(spec.values(), spec.grid().wavenumber_squared()) *
                   spec.grid().cell_volume());
}

}  // namespace

double energy(const ComplexField& u, const HartreeKernel& kernel) {
  const double grad2 = gradient_norm(u);
  return 0.5 * grad2 * grad2 + potential_Q(u, kernel);
}

double lebesgue_norm(const ComplexField& u, double r) {
  const ComplexField pu = to_position(u);
  if (std::isinf(r)) return pu.max_abs();
  if (r < 1.0) throw Error("lebesgue_norm: r must be >= 1");
  return std::pow(kernels::sum_abs_pow(pu.values(), r) * pu.grid().cell_volume(), 1.0 / r);
}

NormLedger weighted_norms(const ComplexField& u, double time) {
  const ComplexField pu = to_position(u);
  NormLedger ledger;
  ledger.time = time;
  const double l2 = pu.l2_norm();
  const double grad = gradient_norm(pu);
  double x2 = 0.0;
  for (int axis = 0; axis < pu.grid().dim; ++axis) x2 += multiply_by_coordinate(pu, axis).l2_norm_squared();
  const double x = std::sqrt(x2);
  const double h1 = std::sqrt(l2 * l2 + grad * grad);
  ledger.set("mass", l2 * l2);
  ledger.set("L2", l2);
  ledger.set("grad_L2", grad);
  ledger.set("x_L2", x);
  ledger.set("H1", h1);
  ledger.set("FH1", std::sqrt(l2 * l2 + x2));
  ledger.set("Sigma", h1 + x);
  return ledger;
}

DecayTable decay_check(const ComplexField& phi, const std::vector<double>& times, const StrichartzExponents& exps) {
  DecayTable table;
  const double theta = exps.decay_exponent();
  const double l2 = to_position(phi).l2_norm();
  for (double t : times) {
    if (!(t > 0.0)) throw Error("decay_check: times must be positive");
    DecayRow row;
    row.t = t;
    const ComplexField u = free_propagate(phi, t);
    row.norm_r = lebesgue_norm(u, exps.r);
    row.norm_2 = l2;
    row.J_norm = component_norm(apply_J(u, t));
    row.bound = std::pow(t, -theta) * std::pow(l2, 1.0 - theta) * std::pow(row.J_norm, theta);
    row.ratio = row.bound > 0.0 ? row.norm_r / row.bound : 0.0;
    row.wrap_fraction = mass_fraction_outside(u, 0.5 * u.grid().half_width);
    table.constant = std::max(table.constant, row.ratio);
    table.rows.push_back(row);
  }
  if (table.rows.size() >= 2) {
    const auto& a = table.rows[table.rows.size() - 2];
    const auto& b = table.rows.back();
    if (a.norm_r > 0.0 && b.norm_r > 0.0)
      table.tail_slope = std::log(b.norm_r / a.norm_r) / std::log(b.t / a.t);
  }
  return table;
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t stride) {
  double s = 0.0;
  for (std::size_t i = stride; i < t.size(); i += stride)
    s += 0.5 * std::abs(t[i] - t[i - stride]) * (y[i] + y[i - stride]);
  return s;
}

}  // namespace

SpacetimeNorm spacetime_norm(const Trajectory& traj, double q, double r) {
  if (traj.empty()) throw Error("spacetime_norm: empty trajectory");
  std::vector<double> norms(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) norms[i] = lebesgue_norm(traj.fields[i], r);
  SpacetimeNorm out;
  if (std::isinf(q)) {
    out.value = out.richardson = *std::max_element(norms.begin(), norms.end());
    return out;
  }
  if (traj.size() == 1) return out;
  std::vector<double> powered(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) powered[i] = std::pow(norms[i], q);
  const double fine = trapezoid(traj.times, powered, 1);
  out.value = std::pow(fine, 1.0 / q);
  // Richardson needs the coarse rule to cover the same interval.
  if ((traj.size() - 1) % 2 == 0 && traj.size() >= 3) {
    const double coarse = trapezoid(traj.times, powered, 2);
    out.richardson = std::pow(std::max(0.0, (4.0 * fine - coarse) / 3.0), 1.0 / q);
  } else {
    out.richardson = out.value;
  }
  return out;
}

double sup_l2(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& f : traj.fields) m = std::max(m, to_position(f).l2_norm());
  return m;
}

}  // namespace hartree
