// hnls: command-line driver for the Hartree solver, hierarchy and scaling experiments.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hartree/error.hpp"
#include "hartree/experiments.hpp"
#include "hartree/field_io.hpp"
#include "hartree/functionals.hpp"
#include "hartree/gronwall.hpp"
#include "hartree/hierarchy.hpp"
#include "hartree/kernels.hpp"
#include "hartree/report.hpp"
#include "hartree/scattering.hpp"
#include "hartree/spectral.hpp"
#include "hartree/taylor.hpp"

namespace fs = std::filesystem;
using namespace hartree;

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Global {
  std::string output_dir = "out";
  int threads = 0;
  unsigned seed = 0;
};

struct GridOpts {
  int dim = 2;
  std::size_t n = 128;
  double L = 32.0;
  double gamma = 1.5;
  std::string policy = "truncated_direct";
  bool dealias = true;

  void add(CLI::App* app) {
    app->add_option("--dim", dim, "Spatial dimension")->capture_default_str();
    app->add_option("--n", n, "Points per axis (power of two)")->capture_default_str();
    app->add_option("--L", L, "Box half-width")->capture_default_str();
    app->add_option("--gamma", gamma, "Kernel exponent")->capture_default_str();
    app->add_option("--policy", policy, "Zero-mode policy: truncated_direct | cell_average")->capture_default_str();
    app->add_option("--dealias", dealias, "2/3-rule on products")->capture_default_str();
  }
};

void check_gamma(double gamma, std::vector<std::string>& v) {
  if (!(gamma > 4.0 / 3.0 && gamma < 2.0)) v.push_back("γ must lie in (4/3, 2)");
}

void check_grid(const GridOpts& g, std::vector<std::string>& v) {
  check_gamma(g.gamma, v);
  if (g.dim != 1 && g.dim != 2) v.push_back("dimension must be 1 or 2");
  else if (!(g.gamma < g.dim)) v.push_back("the kernel |x|^{-γ} needs γ < d (use --dim 2)");
  if (g.n < 16 || (g.n & (g.n - 1)) != 0) v.push_back("n must be a power of two, at least 16");
  if (!(g.L > 0.0)) v.push_back("L must be positive");
  try {
    parse_zero_mode_policy(g.policy);
  } catch (const ConfigError& e) {
    v.insert(v.end(), e.violations().begin(), e.violations().end());
  }
}

// Initial data: a Gaussian, a seeded random modulation of one, or a field file.
struct DataOpts {
  std::string prefix;
  std::string kind = "gaussian";
  std::string input;
  double width = 1.5;
  double amplitude = 0.2;
  double sigma_norm = 0.0;

  DataOpts(std::string p, double w, double a) : prefix(std::move(p)), width(w), amplitude(a) {}

  void add(CLI::App* app) {
    app->add_option("--" + prefix + "data", kind, "gaussian | random | file")->capture_default_str();
    app->add_option("--" + prefix + "input", input, "Field file (with --" + prefix + "data file)");
    app->add_option("--" + prefix + "width", width, "Gaussian width")->capture_default_str();
    app->add_option("--" + prefix + "amplitude", amplitude, "Peak amplitude")->capture_default_str();
    app->add_option("--" + prefix + "sigma-norm", sigma_norm, "Rescale to this Sigma norm (0 keeps amplitude)")
        ->capture_default_str();
  }

  void check(std::vector<std::string>& v) const {
    if (kind != "gaussian" && kind != "random" && kind != "file")
      v.push_back("--" + prefix + "data must be gaussian, random or file");
    if (kind == "file" && input.empty()) v.push_back("--" + prefix + "data file needs --" + prefix + "input");
    if (kind != "file" && !(width > 0.0)) v.push_back("--" + prefix + "width must be positive");
    if (sigma_norm < 0.0) v.push_back("--" + prefix + "sigma-norm must be nonnegative");
  }

  ComplexField make(const Grid& g, unsigned seed) const {
    ComplexField f;
    if (kind == "file") {
      f = to_position(read_field(input));
      require_same_grid(f.grid(), g, ("--" + prefix + "input").c_str());
    } else {
      f = gaussian(g, width, amplitude);
      if (kind == "random") {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> k(-1.0 / width, 1.0 / width), ph(0.0, 2.0 * std::numbers::pi);
        double kx[4], ky[4], p[4];
        for (int m = 0; m < 4; ++m) kx[m] = k(rng), ky[m] = g.dim == 2 ? k(rng) : 0.0, p[m] = ph(rng);
        const ComplexField mod = ComplexField::sample(g, [&](double x, double y) {
          cplx s = 1.0;
          for (int m = 0; m < 4; ++m) s += 0.25 * std::polar(1.0, kx[m] * x + ky[m] * y + p[m]);
          return s;
        });
        for (std::size_t i = 0; i < f.size(); ++i) f[i] *= mod[i];
      }
    }
    if (sigma_norm > 0.0) {
      const double s = weighted_norms(f).at("Sigma");
      if (s == 0.0) throw ConfigError({"--" + prefix + "sigma-norm: data is zero"});
      f *= sigma_norm / s;
    }
    return f;
  }
};

Grid make_checked_grid(const GridOpts& g) { return make_grid(g.dim, g.n, g.L); }

HartreeKernel kernel_for(const Grid& grid, const GridOpts& g) {
  return make_kernel(grid, g.gamma, parse_zero_mode_policy(g.policy), g.dealias);
}

std::string grid_tag(const GridOpts& g) { return fmt("g%g_d%d_n%zu_L%g", g.gamma, g.dim, g.n, g.L); }

json ledger_json(const ComplexField& u) { return to_json(weighted_norms(u)); }

// Output files share a stem: <stem>.json summary, <stem>*.csv tables,
// <stem>.config.toml echo, <stem>.meta.json timestamps.
struct Outputs {
  fs::path dir;
  std::string stem;

  fs::path path(const std::string& suffix) const { return dir / (stem + suffix); }
};

struct Run {
  std::string stem;
  std::function<void()> validate;
  std::function<json(const Outputs&)> compute;
};

void require(const std::vector<std::string>& violations) {
  if (!violations.empty()) throw ConfigError(violations);
}

// --- gronwall --------------------------------------------------------------

struct GronwallOpts {
  double C = 1.0;
  double a1 = 0.5;
  int N = 50;
  std::string convention = "from_one";
  double a0 = 0.0;
};

Run gronwall_run(const GronwallOpts& o) {
  return {fmt("gronwall_C%g_a%g_N%d", o.C, o.a1, o.N),
          [&o] {
            std::vector<std::string> v;
            if (!(o.C > 0.0)) v.push_back("C must be positive");
            if (!(o.a1 > 0.0)) v.push_back("a1 must be positive");
            if (o.N < 1) v.push_back("N must be at least 1");
            if (o.convention != "from_one" && o.convention != "from_zero")
              v.push_back("convention must be from_one or from_zero");
            require(v);
          },
          [&o](const Outputs& out) {
            const auto conv = o.convention == "from_one" ? IndexConvention::from_one : IndexConvention::from_zero;
            const GronwallSequence g = gronwall_sequence(o.C, o.a1, o.N, conv, o.a0);
            std::vector<std::vector<double>> rows;
            for (int N = 1; N <= o.N; ++N) {
              const double aN = g.a[N - 1];
              const double maj = g.C1 * std::pow(g.C0 * g.a1, N);
              rows.push_back({double(N), aN, japanese_sq(N) * aN, maj, japanese_sq(N) * aN / maj});
            }
            write_csv(out.path(".csv"), {"N", "a_N", "weighted_a_N", "majorant", "ratio"}, rows);
            std::printf("strengthened bound %s for N <= %d (worst ratio %.4f)\n",
                        g.strengthened_holds ? "holds" : "FAILS", o.N, g.worst_ratio);
            return to_json(g);
          }};
}

// --- evolve / scatter / wave -----------------------------------------------

struct FlowOpts {
  GridOpts grid;
  DataOpts data{"", 1.5, 0.2};
  double dt = 1e-2;
  double T = 1.0;
  int order = 2;
  std::size_t record_every = 10;
  bool check_energy = false;
  double tol_mass = 1e-9;
  double tol_energy = 1e-2;
  double wrap_tol = 1e-6;
  double picard_tol = 1e-12;
  int picard_max = 200;
  bool roundtrip = false;
  bool save_fields = false;

  SolverConfig solver() const {
    SolverConfig c;
    c.dt = dt;
    c.t1 = T;
    c.order = order;
    c.record_every = record_every;
    c.check_energy = check_energy;
    c.tol_mass = tol_mass;
    c.tol_energy = tol_energy;
    c.wrap_tol = wrap_tol;
    c.dealias = grid.dealias;
    return c;
  }

  void validate() const {
    std::vector<std::string> v;
    check_grid(grid, v);
    data.check(v);
    if (!(picard_tol > 0.0)) v.push_back("picard-tol must be positive");
    if (picard_max < 1) v.push_back("picard-max must be at least 1");
    try {
      solver().validate();
    } catch (const ConfigError& e) {
      v.insert(v.end(), e.violations().begin(), e.violations().end());
    }
    require(v);
  }
};

void add_flow_options(CLI::App* app, FlowOpts& o, bool picard) {
  o.grid.add(app);
  o.data.add(app);
  app->add_option("--dt", o.dt, "Time step")->capture_default_str();
  app->add_option("--T", o.T, "Final time")->capture_default_str();
  app->add_option("--order", o.order, "Splitting order (2 or 4)")->capture_default_str();
  app->add_option("--record-every", o.record_every, "Steps between stored samples")->capture_default_str();
  app->add_option("--check-energy", o.check_energy, "Monitor energy drift")->capture_default_str();
  app->add_option("--tol-mass", o.tol_mass, "Relative mass drift alarm")->capture_default_str();
  app->add_option("--tol-energy", o.tol_energy, "Relative energy drift alarm")->capture_default_str();
  app->add_option("--wrap-tol", o.wrap_tol, "Mass fraction near the box edge that raises an alarm")
      ->capture_default_str();
  if (picard) {
    app->add_option("--picard-tol", o.picard_tol, "Picard stopping tolerance")->capture_default_str();
    app->add_option("--picard-max", o.picard_max, "Picard iteration cap")->capture_default_str();
  }
  app->add_option("--save-fields", o.save_fields, "Write binary field containers")->capture_default_str();
}

Run evolve_run(const FlowOpts& o, const Global& gl) {
  return {"evolve_" + grid_tag(o.grid), [&o] { o.validate(); },
          [&o, &gl](const Outputs& out) {
            const Grid g = make_checked_grid(o.grid);
            const HartreeKernel K = kernel_for(g, o.grid);
            const ComplexField u0 = o.data.make(g, gl.seed);
            EvolveDiagnostics d;
            const Trajectory traj = evolve(u0, o.solver(), K, &d);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < d.times.size(); ++i)
              rows.push_back({d.times[i], d.mass[i], d.energy.empty() ? std::nan("") : d.energy[i]});
            write_csv(out.path(".csv"), {"time", "mass", "energy"}, rows);
            if (o.save_fields) write_frames(out.path(".bin"), {traj.times, traj.fields, o.grid.gamma});
            std::printf("mass drift %.3e, energy drift %.3e, wrap fraction %.3e\n", d.max_mass_drift,
                        d.max_energy_drift, d.max_wrap_fraction);
            return json{{"diagnostics", to_json(d)},
                        {"energy_in", energy(u0, K)},
                        {"norms_in", ledger_json(u0)},
                        {"norms_out", to_json(weighted_norms(traj.fields.back(), traj.times.back()))}};
          }};
}

Run scatter_run(const FlowOpts& o, const Global& gl) {
  return {"scatter_" + grid_tag(o.grid), [&o] { o.validate(); },
          [&o, &gl](const Outputs& out) {
            const Grid g = make_checked_grid(o.grid);
            const HartreeKernel K = kernel_for(g, o.grid);
            const ComplexField u0 = o.data.make(g, gl.seed);
            json j;
            if (o.roundtrip) {
              const RoundTrip rt = roundtrip_check(u0, o.solver(), K, {o.picard_tol, o.picard_max});
              j = to_json(rt.scatter);
              j["roundtrip"] = {{"wave_after_scatter", rt.wave_after_scatter},
                                {"scatter_after_wave", rt.scatter_after_wave}};
              j["norms_out"] = ledger_json(rt.scatter.u_plus);
              if (o.save_fields) write_field(out.path("_uplus.bin"), rt.scatter.u_plus, o.grid.gamma);
              std::printf("|W(S(u0)) - u0|/|u0| = %.3e, |S(W(u0)) - u0|/|u0| = %.3e\n", rt.wave_after_scatter,
                          rt.scatter_after_wave);
            } else {
              const ScatterResult s = scattering_state(u0, o.solver(), K);
              j = to_json(s);
              j["u_plus_extrapolated_L2"] = s.u_plus_extrapolated.l2_norm();
              j["norms_out"] = ledger_json(s.u_plus);
              if (o.save_fields) write_field(out.path("_uplus.bin"), s.u_plus, o.grid.gamma);
              std::printf("|u+|_2 = %.6g, tail estimate %.3e\n", s.u_plus.l2_norm(), s.tail_estimate);
            }
            j["norms_in"] = ledger_json(u0);
            return j;
          }};
}

Run wave_run(const FlowOpts& o, const Global& gl) {
  return {"wave_" + grid_tag(o.grid), [&o] { o.validate(); },
          [&o, &gl](const Outputs& out) {
            const Grid g = make_checked_grid(o.grid);
            const HartreeKernel K = kernel_for(g, o.grid);
            const ComplexField u_plus = o.data.make(g, gl.seed);
            const ScatterResult w = wave_operator(u_plus, o.solver(), K, {o.picard_tol, o.picard_max});
            if (o.save_fields) write_field(out.path("_u0.bin"), w.u_plus, o.grid.gamma);
            std::printf("|u0|_2 = %.6g after %d Picard iterations (factor %.3g)\n", w.u_plus.l2_norm(), w.iterations,
                        w.contraction);
            json j = to_json(w);
            j["norms_in"] = ledger_json(u_plus);
            j["norms_out"] = ledger_json(w.u_plus);
            return j;
          }};
}

// --- hierarchy -------------------------------------------------------------

struct HierarchyOpts {
  GridOpts grid;
  DataOpts u0{"u0-", 1.5, 0.0};
  DataOpts v{"v-", 1.5, 0.2};
  std::string route = "picard";
  int order = 3;
  double T = 2.0;
  std::size_t steps = 40;
  std::string anchor = "final_state";
  double picard_tol = 1e-10;
  int picard_max = 200;
  std::vector<double> companions{0.01, 0.005};
  bool save_fields = false;
};

Run hierarchy_run(const HierarchyOpts& o, const Global& gl) {
  return {fmt("hierarchy_%s_K%d_", o.route.c_str(), o.order) + grid_tag(o.grid),
          [&o] {
            std::vector<std::string> v;
            check_grid(o.grid, v);
            o.u0.check(v);
            o.v.check(v);
            if (o.route != "picard" && o.route != "taylor") v.push_back("route must be picard or taylor");
            if (o.order < 1) v.push_back("order must be at least 1");
            if (!(o.T > 0.0)) v.push_back("T must be positive");
            if (o.steps < 4) v.push_back("steps must be at least 4");
            if (o.anchor != "final_state" && o.anchor != "initial") v.push_back("anchor must be final_state or initial");
            for (double e : o.companions)
              if (!(e > 0.0)) v.push_back("companions must be positive");
            require(v);
          },
          [&o, &gl](const Outputs& out) {
            const Grid g = make_checked_grid(o.grid);
            const HartreeKernel K = kernel_for(g, o.grid);
            const ComplexField u0 = o.u0.amplitude == 0.0 && o.u0.kind != "file" ? ComplexField(g)
                                                                                  : o.u0.make(g, gl.seed);
            const ComplexField v = o.v.make(g, gl.seed + 1);
            json j;
            std::vector<std::vector<double>> rows;
            if (o.route == "picard") {
              HierarchyOptions opt;
              opt.anchor = o.anchor == "initial" ? Anchor::initial : Anchor::final_state;
              opt.picard = {o.picard_tol, o.picard_max};
              const HierarchyCoefficients c = solve_hierarchy(u0, v, o.order, uniform_times(o.T, o.steps), K, opt);
              for (int k = 0; k <= o.order; ++k) {
                const NormLedger& l = c.ledger[k];
                rows.push_back({double(k), l.at("Linf_L2"), l.at("Lq_Lr"), l.at("plus_L2"), c.contraction[k]});
              }
              write_csv(out.path(".csv"), {"k", "Linf_L2", "Lq_Lr", "plus_L2", "contraction"}, rows);
              if (o.save_fields) write_frames(out.path("_plus.bin"), {std::vector<double>(c.w_plus.size(), o.T), c.w_plus, o.grid.gamma});
              j["anchor"] = to_string(opt.anchor);
              j["Lambda_fit"] = c.Lambda_fit;
              std::printf("Lambda_fit = %.4g\n", c.Lambda_fit);
            } else {
              TaylorOptions opt;
              opt.order = o.order;
              opt.T = o.T;
              opt.steps = o.steps;
              opt.companions = o.companions;
              const TaylorResult r = taylor_march(u0, v, K, opt);
              std::vector<double> sups;
              for (int k = 0; k <= o.order; ++k) {
                rows.push_back({double(k), r.sup_norm[k], r.w_plus[k].l2_norm(), r.vanishes[k] ? 1.0 : 0.0});
                if (k >= 1) sups.push_back(r.sup_norm[k]);
              }
              write_csv(out.path(".csv"), {"k", "Linf_L2", "plus_L2", "vanishes"}, rows);
              std::vector<std::vector<double>> rem;
              for (std::size_t c = 0; c < o.companions.size(); ++c)
                for (int N = 0; N <= o.order; ++N)
                  rem.push_back({o.companions[c], double(N), r.remainder[c][N], r.remainder_final[c][N]});
              write_csv(out.path("_remainder.csv"), {"eps", "N", "sup_remainder", "final_remainder"}, rem);
              if (o.save_fields) write_frames(out.path("_plus.bin"), {std::vector<double>(r.w_plus.size(), o.T), r.w_plus, o.grid.gamma});
              int positive = 0;
              for (double s : sups) positive += s > 1e-300;
              if (positive >= 2) j["Lambda_fit"] = fit_geometric_rate(sups);
            }
            j["route"] = o.route;
            j["norms_u0"] = ledger_json(u0);
            j["norms_v"] = ledger_json(v);
            return j;
          }};
}

// --- scaling ---------------------------------------------------------------

struct ProfileOpts {
  double width = 1.0;
  std::size_t n = 64;
  double L = 8.0;
  std::string input;

  void add(CLI::App* app) {
    app->add_option("--v-width", width, "Width of the Gaussian base profile")->capture_default_str();
    app->add_option("--v-n", n, "Points per axis of the base profile grid")->capture_default_str();
    app->add_option("--v-L", L, "Half-width of the base profile grid")->capture_default_str();
    app->add_option("--v-input", input, "Base profile field file (replaces the Gaussian)");
  }

  ComplexField make() const {
    if (!input.empty()) return to_position(read_field(input));
    return gaussian(make_grid(2, n, L), width, 1.0);
  }
};

struct ScalingOpts {
  ScalingConfig cfg;
  std::string mode = "both";
  std::string policy = "truncated_direct";
  ProfileOpts profile;
};

Run scaling_run(ScalingOpts& o) {
  return {fmt("scaling_%s_g%g_dx%g", o.mode.c_str(), o.cfg.gamma, o.cfg.dx),
          [&o] {
            std::vector<std::string> v;
            check_gamma(o.cfg.gamma, v);
            if (o.mode != "eps" && o.mode != "sigma" && o.mode != "both") v.push_back("mode must be eps, sigma or both");
            for (double s : o.cfg.sigmas)
              if (!(s > 0.0)) v.push_back("sigmas must be positive");
            for (double e : o.cfg.epsilons)
              if (!(e > 0.0)) v.push_back("epsilons must be positive");
            if (o.mode != "eps" && o.cfg.sigmas.size() < 2) v.push_back("a sigma fit needs at least two sigmas");
            if (o.mode != "sigma" && o.cfg.epsilons.size() < 2) v.push_back("an eps fit needs at least two epsilons");
            if (!(o.cfg.dx > 0.0)) v.push_back("dx must be positive");
            try {
              o.cfg.policy = parse_zero_mode_policy(o.policy);
            } catch (const ConfigError& e) {
              v.insert(v.end(), e.violations().begin(), e.violations().end());
            }
            require(v);
          },
          [&o](const Outputs& out) {
            ScalingConfig c = o.cfg;
            if (o.mode == "sigma") c.epsilons = {1.0};
            if (o.mode == "eps") c.sigmas = {c.sigmas.front()};
            const ScalingResult r = scaling_sweep(o.profile.make(), c);
            write_csv(out.path(".csv"), kScalingColumns, csv_rows(r));
            json j = to_json(r);
            j["mode"] = o.mode;
            if (o.mode == "sigma") j.erase("eps_fit");
            if (o.mode == "eps") j.erase("sigma_fit");
            if (o.mode != "sigma")
              std::printf("eps exponent %.6f (reference %.1f)\n", r.eps_fit.slope, r.eps_reference);
            if (o.mode != "eps")
              std::printf("sigma exponent %.4f (reference %.4f)\n", r.sigma_fit.slope, r.sigma_reference);
            if (!j["all_reliable"].get<bool>()) std::printf("warning: some free-energy integrals are not converged\n");
            return j;
          }};
}

// --- breakdown -------------------------------------------------------------

Run origin_run(BreakdownConfig& c, const ProfileOpts& p) {
  return {fmt("breakdown_origin_g%g_j%g_s%g_dx%g", c.gamma, c.j, c.s, c.dx), [&c] { validate_breakdown(c); },
          [&c, &p](const Outputs& out) {
            const BreakdownResult r = breakdown_origin(p.make(), c);
            write_csv(out.path(".csv"), kBreakdownColumns, csv_rows(r));
            std::printf("ratio slope %.4f (reference %.4f), %s\n", r.fit.slope, r.expected_slope,
                        r.monotone ? "monotone" : "not monotone");
            return to_json(r);
          }};
}

struct OffOriginOpts {
  OffOriginConfig cfg;
  std::string schedule = "fixed";
  double j = 4.0;
  std::vector<double> fractions{0.5, 0.25, 0.125};
  std::size_t calib_n = 128;
  double calib_L = 64.0;
  double calib_dt = 0.1;
  double calib_T = 10.0;
  std::vector<double> calib_sigma_norms{0.5, 1.0, 2.0, 4.0, 8.0};
  ProfileOpts profile;

  OffOriginConfig config() const {
    OffOriginConfig c = cfg;
    if (schedule == "power") c.j = j;
    return c;
  }
};

Run off_origin_run(OffOriginOpts& o) {
  const std::string sched = o.schedule == "power" ? fmt("j%g", o.j) : fmt("eps%g", o.cfg.eps);
  return {fmt("breakdown_offorigin_g%g_%s_s%g_dx%g", o.cfg.gamma, sched.c_str(), o.cfg.s, o.cfg.dx),
          [&o] {
            std::vector<std::string> v;
            if (o.schedule != "fixed" && o.schedule != "power") v.push_back("eps-schedule must be fixed or power");
            if (o.fractions.empty()) v.push_back("need at least one u0 fraction");
            for (double f : o.fractions)
              if (!(f > 0.0 && f < 1.0)) v.push_back("u0 fractions of R must lie in (0, 1)");
            if (o.cfg.radius == 0.0 && o.calib_sigma_norms.empty()) v.push_back("calibration needs Sigma-norm levels");
            OffOriginConfig c = o.config();
            if (c.radius == 0.0) c.radius = 1.0;
            try {
              validate_off_origin(c);
            } catch (const ConfigError& e) {
              v.insert(v.end(), e.violations().begin(), e.violations().end());
            }
            require(v);
          },
          [&o](const Outputs& out) {
            OffOriginConfig c = o.config();
            const Grid gc = make_grid(2, o.calib_n, o.calib_L);
            const ComplexField shape = gaussian(gc, c.u0_width, 1.0);
            const double sig1 = weighted_norms(shape).at("Sigma");
            json calib;
            if (c.radius == 0.0) {
              SolverConfig sc;
              sc.dt = o.calib_dt;
              sc.t1 = o.calib_T;
              std::vector<double> amps;
              for (double s : o.calib_sigma_norms) amps.push_back(s / sig1);
              const RadiusCalibration cal = calibrate_radius(shape, sc, make_kernel(gc, c.gamma), amps);
              write_csv(out.path("_calibration.csv"), {"sigma_norm", "contraction"}, [&] {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < cal.factors.size(); ++i) rows.push_back({cal.sigma_norms[i], cal.factors[i]});
                return rows;
              }());
              if (!(cal.radius > 0.0))
                throw Error("radius calibration: no tested Sigma norm gives a contraction factor <= 1/2");
              c.radius = cal.radius;
              calib = {{"sigma_norms", cal.sigma_norms}, {"factors", cal.factors}};
            }
            c.u0_amplitudes.clear();
            for (double f : o.fractions) c.u0_amplitudes.push_back(f * c.radius / sig1);
            const OffOriginResult r = breakdown_off_origin(o.profile.make(), c);
            write_csv(out.path(".csv"), kOffOriginColumns, csv_rows(r.rows));
            std::printf("R = %.4g, resonant sigma slope %.4f (reference %.4f), ladder slope %.3f, bound usage %.3f\n",
                        c.radius, r.resonant_fit.slope, r.resonant_reference, r.ladder_slope, r.bound_usage);
            json j = to_json(r);
            if (!calib.is_null()) j["calibration"] = calib;
            return j;
          }};
}

void add_breakdown_common(CLI::App* app, double& gamma, double& s, std::vector<double>& sigmas, double& dx,
                          double& horizon, std::size_t& steps) {
  app->add_option("--gamma", gamma, "Kernel exponent")->capture_default_str();
  app->add_option("--s", s, "Regularity index")->capture_default_str();
  app->add_option("--sigmas", sigmas, "Sigma schedule")->delimiter(',')->capture_default_str();
  app->add_option("--dx", dx, "Grid spacing")->capture_default_str();
  app->add_option("--horizon-factor", horizon, "Taylor march horizon T = factor * sigma^2")->capture_default_str();
  app->add_option("--steps", steps, "Taylor march steps")->capture_default_str();
}

int execute(const Run& run, const Global& gl, const CLI::App& app, const std::vector<std::string>& argv) {
  try {
    run.validate();
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration:\n";
    for (const auto& v : e.violations()) std::cerr << "  - " << v << '\n';
    return 1;
  }
  if (gl.threads > 0) kernels::set_thread_count(gl.threads);
  const Outputs out{gl.output_dir, run.stem};
  fs::create_directories(out.dir);
  {
    // Globals plus the selected subcommand's section.
    std::string prefix;
    for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
      a = a->get_subcommands().front();
      prefix += a->get_name() + ".";
    }
    std::istringstream all(app.config_to_str(true, false));
    std::ofstream echo(out.path(".config.toml"));
    for (std::string line; std::getline(all, line);) {
      const auto key = line.substr(0, line.find('='));
      if (key.find('.') == std::string::npos || line.rfind(prefix, 0) == 0) echo << line << '\n';
    }
  }
  json meta{{"started", utc_now()}, {"command_line", argv}, {"threads", kernels::thread_count()}, {"seed", gl.seed}};
  const auto t0 = std::chrono::steady_clock::now();
  int status = 0;
  json summary;
  try {
    summary = run.compute(out);
    summary["status"] = "ok";
  } catch (const ConfigError& e) {
    std::string msg;
    for (const auto& v : e.violations()) msg += (msg.empty() ? "" : "; ") + v;
    summary = {{"status", "alarm"}, {"alarm", msg}};
    status = 2;
  } catch (const Error& e) {
    summary = {{"status", "alarm"}, {"alarm", e.what()}};
    status = 2;
  }
  if (status) std::cerr << "alarm: " << summary["alarm"].get<std::string>() << '\n';
  summary["seed"] = gl.seed;
  write_json(out.path(".json"), summary);
  meta["finished"] = utc_now();
  meta["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  meta["status"] = summary["status"];
  write_json(out.path(".meta.json"), meta);
  std::printf("wrote %s\n", out.path(".json").string().c_str());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hartree NLS solver and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file (command-line flags take precedence)");
  Global gl;
  app.add_option("--output-dir", gl.output_dir, "Directory for results")->capture_default_str();
  app.add_option("--threads", gl.threads, "Worker threads (0 keeps the OpenMP default)")->capture_default_str();
  app.add_option("--seed", gl.seed, "Seed for randomized fields")->capture_default_str();

  std::vector<Run> selected;

  GronwallOpts gr;
  auto* gron = app.add_subcommand("gronwall", "Cubic convolution recursion and its majorant");
  gron->add_option("--C", gr.C, "Recursion constant")->capture_default_str();
  gron->add_option("--a1", gr.a1, "First term")->capture_default_str();
  gron->add_option("--N", gr.N, "Number of terms")->capture_default_str();
  gron->add_option("--convention", gr.convention, "from_one | from_zero")->capture_default_str();
  gron->add_option("--a0", gr.a0, "a_0 for the from_zero convention")->capture_default_str();

  FlowOpts ev, sc, wv;
  ev.record_every = 10;
  sc.dt = 0.05;
  sc.T = 6.0;
  sc.grid.L = 64.0;
  wv.dt = 0.05;
  wv.T = 2.0;
  wv.grid.n = 256;
  wv.grid.L = 40.0;
  auto* evo = app.add_subcommand("evolve", "Strang-split time integration with conservation monitors");
  add_flow_options(evo, ev, false);
  auto* sca = app.add_subcommand("scatter", "Scattering state e^{-iT Laplacian} u(T)");
  add_flow_options(sca, sc, true);
  sca->add_option("--roundtrip", sc.roundtrip, "Also compose with the wave operator both ways")->capture_default_str();
  auto* wav = app.add_subcommand("wave", "Wave operator by Picard iteration from a final state");
  add_flow_options(wav, wv, true);

  HierarchyOpts hi;
  auto* hie = app.add_subcommand("hierarchy", "Coefficients w_k of the expansion in eps");
  hi.grid.L = 16.0;
  hi.grid.n = 64;
  hi.grid.add(hie);
  hi.u0.add(hie);
  hi.v.add(hie);
  hie->add_option("--route", hi.route, "picard | taylor")->capture_default_str();
  hie->add_option("--order", hi.order, "Highest coefficient")->capture_default_str();
  hie->add_option("--T", hi.T, "Time horizon")->capture_default_str();
  hie->add_option("--steps", hi.steps, "Time steps")->capture_default_str();
  hie->add_option("--anchor", hi.anchor, "final_state | initial (picard route)")->capture_default_str();
  hie->add_option("--picard-tol", hi.picard_tol, "Picard stopping tolerance")->capture_default_str();
  hie->add_option("--picard-max", hi.picard_max, "Picard iteration cap")->capture_default_str();
  hie->add_option("--companions", hi.companions, "eps values for direct comparison (taylor route)")
      ->delimiter(',')
      ->capture_default_str();
  hie->add_option("--save-fields", hi.save_fields, "Write w_k^+ as a binary container")->capture_default_str();

  ScalingOpts sl;
  auto* sca2 = app.add_subcommand("scaling", "Free-energy scaling sweep");
  sca2->add_option("--gamma", sl.cfg.gamma, "Kernel exponent")->capture_default_str();
  sca2->add_option("--mode", sl.mode, "eps | sigma | both")->capture_default_str();
  sca2->add_option("--epsilons", sl.cfg.epsilons, "eps schedule")->delimiter(',')->capture_default_str();
  sca2->add_option("--sigmas", sl.cfg.sigmas, "sigma schedule")->delimiter(',')->capture_default_str();
  sca2->add_option("--dx", sl.cfg.dx, "Grid spacing")->capture_default_str();
  sca2->add_option("--policy", sl.policy, "Zero-mode policy")->capture_default_str();
  sca2->add_option("--dealias", sl.cfg.dealias, "2/3-rule on products")->capture_default_str();
  sl.profile.add(sca2);

  auto* brk = app.add_subcommand("breakdown", "Breakdown experiments");
  brk->require_subcommand(1);
  BreakdownConfig bo;
  ProfileOpts bo_profile;
  auto* ori = brk->add_subcommand("origin", "Ratio growth along eps = sigma^{-j} at u0 = 0");
  add_breakdown_common(ori, bo.gamma, bo.s, bo.sigmas, bo.dx, bo.horizon_factor, bo.steps);
  ori->add_option("--j", bo.j, "Schedule exponent")->capture_default_str();
  ori->add_option("--max-eps-sigma", bo.max_eps_sigma, "Largest allowed eps * sigma")->capture_default_str();
  bo_profile.add(ori);

  OffOriginOpts oo;
  auto* off = brk->add_subcommand("off-origin", "Decomposition of w_3^+ around small u0");
  add_breakdown_common(off, oo.cfg.gamma, oo.cfg.s, oo.cfg.sigmas, oo.cfg.dx, oo.cfg.horizon_factor, oo.cfg.steps);
  off->add_option("--eps-schedule", oo.schedule, "fixed | power")->capture_default_str();
  off->add_option("--eps", oo.cfg.eps, "eps for the fixed schedule")->capture_default_str();
  off->add_option("--j", oo.j, "eps = sigma^{-j} for the power schedule")->capture_default_str();
  off->add_option("--u0-width", oo.cfg.u0_width, "Width of the Gaussian u0")->capture_default_str();
  off->add_option("--u0-fractions", oo.fractions, "||u0||_Sigma as fractions of R")->delimiter(',')->capture_default_str();
  off->add_option("--radius", oo.cfg.radius, "Small-data radius R (0 calibrates it)")->capture_default_str();
  off->add_option("--calib-n", oo.calib_n, "Calibration grid points per axis")->capture_default_str();
  off->add_option("--calib-L", oo.calib_L, "Calibration grid half-width")->capture_default_str();
  off->add_option("--calib-dt", oo.calib_dt, "Calibration time step")->capture_default_str();
  off->add_option("--calib-T", oo.calib_T, "Calibration horizon")->capture_default_str();
  off->add_option("--calib-sigma-norms", oo.calib_sigma_norms, "Sigma norms tried during calibration")
      ->delimiter(',')
      ->capture_default_str();
  oo.profile.add(off);

  CLI11_PARSE(app, argc, argv);

  Run run;
  if (*gron) run = gronwall_run(gr);
  if (*evo) run = evolve_run(ev, gl);
  if (*sca) run = scatter_run(sc, gl);
  if (*wav) run = wave_run(wv, gl);
  if (*hie) run = hierarchy_run(hi, gl);
  if (*sca2) run = scaling_run(sl);
  if (*ori) run = origin_run(bo, bo_profile);
  if (*off) run = off_origin_run(oo);
  return execute(run, gl, app, std::vector<std::string>(argv, argv + argc));
}
