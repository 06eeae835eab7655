#include "hartree/scattering.hpp"

#include <cmath>
#include <string>

#include "hartree/error.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

ScatterResult scattering_state(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel) {
  if (cfg.t0 != 0.0 || !(cfg.t1 > 0.0)) throw ConfigError({"scattering_state needs t0 = 0 and t1 > 0"});
  const std::size_t n = cfg.steps();
  if (n % 4 != 0) throw ConfigError({"scattering_state needs a step count divisible by 4"});
  SolverConfig c = cfg;
  c.record_every = n / 4;
  const Trajectory traj = evolve(u0, c, kernel);
  const Trajectory prof = interaction_profile(traj);
  const std::size_t last = prof.size() - 1;
  ScatterResult r;
  r.T_used = prof.times[last];
  r.u_plus = prof.fields[last];
  const ComplexField& half = prof.fields[2];
  const ComplexField& quarter = prof.fields[1];
  const double d1 = (r.u_plus - half).l2_norm();
  const double d2 = (half - quarter).l2_norm();
  const double kappa = make_exponents(kernel.gamma > 0 ? kernel.gamma : 1.5, u0.grid().dim).tail_exponent();
  r.tail_estimate = d1 / (std::pow(2.0, kappa - 1.0) - 1.0);
  r.u_plus_extrapolated = r.u_plus;
  // Differences at rounding level: the profile has already settled.
  const double floor = 1e-12 * r.u_plus.l2_norm();
  if (d1 > floor || d2 > floor) {
    r.tail_ratio = d2 > 0.0 ? d1 / d2 : kInfinity;
    if (r.tail_ratio >= 1.0)
      throw SolverAlarm("scattering_state: interaction profile is not Cauchy (ratio " + std::to_string(r.tail_ratio) +
                        ")");
    const double rate = std::max(-std::log2(r.tail_ratio), kappa - 1.0);
    r.u_plus_extrapolated.add_scaled(1.0 / (std::pow(2.0, rate) - 1.0), r.u_plus - half);
  }
  return r;
}

ScatterResult wave_operator(const ComplexField& u_plus, const SolverConfig& cfg, const HartreeKernel& kernel,
                            const PicardOptions& picard_options) {
  if (cfg.t0 != 0.0 || !(cfg.t1 > 0.0)) throw ConfigError({"wave_operator needs t0 = 0 and t1 > 0"});
  cfg.validate();
  const auto times = uniform_times(cfg.t1, cfg.steps());
  const Trajectory base = free_trajectory(u_plus, times);
  ScatterResult r;
  r.T_used = cfg.t1;
  if (u_plus.max_abs() == 0.0 || kernel.is_zero()) {
    r.u_plus = to_position(u_plus);
    return r;
  }
  const PicardResult p = picard(
      base,
      [&](const Trajectory& u) {
        return duhamel_from_integrand(duhamel_integrand(u, u, u, kernel), times, Anchor::final_state);
      },
      picard_options);
  r.u_plus = p.solution.fields.front();
  r.iterations = p.iterations;
  r.contraction = p.contraction;
  const double g_last = trilinear_T(p.solution.fields.back(), p.solution.fields.back(), p.solution.fields.back(),
                                    kernel).l2_norm();
  if (kernel.gamma > 1.0) r.tail_estimate = g_last * cfg.t1 / (kernel.gamma - 1.0);
  return r;
}

RoundTrip roundtrip_check(const ComplexField& u0, const SolverConfig& cfg, const HartreeKernel& kernel,
                          const PicardOptions& picard_options) {
  RoundTrip rt;
  const double norm = to_position(u0).l2_norm();
  if (norm == 0.0) return rt;
  rt.scatter = scattering_state(u0, cfg, kernel);
  rt.wave = wave_operator(rt.scatter.u_plus, cfg, kernel, picard_options);
  rt.wave_after_scatter = (rt.wave.u_plus - to_position(u0)).l2_norm() / norm;
  const ScatterResult w = wave_operator(u0, cfg, kernel, picard_options);
  const ScatterResult s = scattering_state(w.u_plus, cfg, kernel);
  rt.scatter_after_wave = (s.u_plus - to_position(u0)).l2_norm() / norm;
  return rt;
}

RadiusCalibration calibrate_radius(const ComplexField& profile, const SolverConfig& cfg, const HartreeKernel& kernel,
                                   const std::vector<double>& amplitudes) {
  RadiusCalibration cal;
  const double base_sigma = weighted_norms(profile).at("Sigma");
  for (double a : amplitudes) {
    const ComplexField f = a * to_position(profile);
    double factor = 0.0;
    try {
      factor = wave_operator(f, cfg, kernel, PicardOptions{1e-8, 60}).contraction;
    } catch (const ContractionFailure& e) {
      factor = std::max(e.factor(), 1.0);
    }
    cal.sigma_norms.push_back(a * base_sigma);
    cal.factors.push_back(factor);
    if (factor <= 0.5) cal.radius = std::max(cal.radius, a * base_sigma);
  }
  return cal;
}

double RadiusTable::at(int d, double gamma) const {
  auto it = table_.find({d, gamma});
  if (it == table_.end())
    throw Error("radius table: no calibrated radius for d = " + std::to_string(d) + ", gamma = " + std::to_string(gamma));
  return it->second;
}

}  // namespace hartree
