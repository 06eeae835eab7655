#include "hartree/report.hpp"

#include <cstdio>
#include <fstream>

#include "hartree/error.hpp"

namespace hartree {

namespace {

std::string format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw Error("write_csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format(row[i]);
    out << '\n';
  }
}

void write_json(const std::filesystem::path& path, const json& value) {
  auto out = open_out(path);
  out << value.dump(2) << '\n';
}

json to_json(const NormLedger& l) {
  json j;
  j["time"] = l.time;
  for (const auto& [k, v] : l.values) j[k] = v;
  return j;
}

json to_json(const FitReport& f) {
  json j;
  j["model"] = to_string(f.model);
  j["slope"] = f.slope;
  if (f.model == FitModel::joint) {
    j["sigma_slope"] = f.sigma_slope;
    j["sigma_half_width"] = f.sigma_half_width;
  }
  j["intercept"] = f.intercept;
  j["residual"] = f.residual;
  j["half_width"] = f.half_width;
  j["points"] = f.points;
  return j;
}

json to_json(const EvolveDiagnostics& d) {
  return json{{"steps", d.steps},
              {"dt_used", d.dt_used},
              {"max_mass_drift", d.max_mass_drift},
              {"max_energy_drift", d.max_energy_drift},
              {"max_wrap_fraction", d.max_wrap_fraction}};
}

json to_json(const ScatterResult& r) {
  return json{{"u_plus_L2", r.u_plus.size() ? r.u_plus.l2_norm() : 0.0},
              {"T_used", r.T_used},
              {"tail_estimate", r.tail_estimate},
              {"tail_ratio", r.tail_ratio},
              {"iterations", r.iterations},
              {"contraction_factor", r.contraction}};
}

json to_json(const GronwallSequence& g) {
  return json{{"C", g.C},
              {"a1", g.a1},
              {"convention", g.convention == IndexConvention::from_one ? "from_one" : "from_zero"},
              {"a0", g.a0},
              {"N", g.a.size()},
              {"a", g.a},
              {"C1", g.C1},
              {"C0", g.C0},
              {"C0_min", g.C0_min},
              {"C2", gronwall_C2()},
              {"plain_bound_holds", g.plain_holds},
              {"strengthened_bound_holds", g.strengthened_holds},
              {"worst_ratio", g.worst_ratio},
              {"growth_rate", g.growth_rate}};
}

json to_json(const FreeEnergyResult& r) {
  return json{{"value", r.value},         {"near", r.near},
              {"far", r.far},             {"tail", r.tail},
              {"trapezoid", r.trapezoid}, {"t_switch", r.t_switch},
              {"horizon", r.horizon},     {"relative_tail", r.relative_tail},
              {"reliable", r.reliable},   {"switch_mismatch", r.switch_mismatch},
              {"wrap_fraction", r.wrap_fraction}};
}

const std::vector<std::string> kScalingColumns{"eps", "sigma", "n", "half_width", "integral", "relative_tail",
                                               "reliable", "switch_mismatch", "mass", "sigma_norm"};

std::vector<std::vector<double>> csv_rows(const ScalingResult& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& x : r.rows)
    rows.push_back({x.eps, x.sigma, static_cast<double>(x.n), x.half_width, x.integral, x.relative_tail,
                    x.reliable ? 1.0 : 0.0, x.switch_mismatch, x.mass, x.sigma_norm});
  return rows;
}

json to_json(const ScalingResult& r) {
  json j;
  j["gamma"] = r.config.gamma;
  j["dx"] = r.config.dx;
  j["epsilons"] = r.config.epsilons;
  j["sigmas"] = r.config.sigmas;
  j["eps_fit"] = to_json(r.eps_fit);
  j["sigma_fit"] = to_json(r.sigma_fit);
  j["reference_slopes"] = {{"eps", r.eps_reference}, {"sigma", r.sigma_reference}};
  bool reliable = true;
  for (const auto& x : r.rows) reliable = reliable && x.reliable;
  j["all_reliable"] = reliable;
  return j;
}

const std::vector<std::string> kBreakdownColumns{"eps", "sigma", "n", "v_norm", "main", "remainder3",
                                                 "w5_term", "e_proxy", "lower", "ratio"};

std::vector<std::vector<double>> csv_rows(const BreakdownResult& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& x : r.rows)
    rows.push_back({x.eps, x.sigma, static_cast<double>(x.n), x.v_norm, x.main, x.remainder3, x.w5_term, x.e_proxy,
                    x.lower, x.ratio});
  return rows;
}

json to_json(const BreakdownResult& r) {
  json j;
  j["gamma"] = r.config.gamma;
  j["j"] = r.config.j;
  j["s"] = r.config.s;
  j["sigmas"] = r.config.sigmas;
  j["slopes"] = r.slopes;
  j["fit"] = to_json(r.fit);
  j["monotone"] = r.monotone;
  j["reference_slopes"] = {{"ratio", r.expected_slope}};
  j["thresholds"] = {{"s_min", (5.0 + 5.0 * r.config.gamma) / (3.0 + r.config.gamma)},
                     {"j_min", (3.0 + r.config.gamma) / 2.0}};
  return j;
}

const std::vector<std::string> kOffOriginColumns{
    "eps",      "sigma", "u0_amplitude", "u0_sigma_norm",  "n",            "linear", "mixed",
    "resonant", "ratio", "w3_plus",      "parts_mismatch", "series_ratio", "tau"};

std::vector<std::vector<double>> csv_rows(const std::vector<OffOriginRow>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& x : rows)
    out.push_back({x.eps, x.sigma, x.u0_amplitude, x.u0_sigma_norm, static_cast<double>(x.n), x.linear, x.mixed,
                   x.resonant, x.ratio, x.w3_plus, x.parts_mismatch, x.series_ratio, x.tau});
  return out;
}

json to_json(const OffOriginResult& r) {
  json j;
  j["gamma"] = r.config.gamma;
  j["eps"] = r.config.eps;
  if (r.config.j) j["j"] = *r.config.j;
  j["s"] = r.config.s;
  j["sigmas"] = r.config.sigmas;
  j["u0_width"] = r.config.u0_width;
  j["u0_amplitudes"] = r.config.u0_amplitudes;
  j["radius"] = r.config.radius;
  j["resonant_fit"] = to_json(r.resonant_fit);
  j["ladder_slope"] = r.ladder_slope;
  j["C_fit"] = r.C_fit;
  j["bound_usage"] = r.bound_usage;
  j["reference_slopes"] = {{"resonant_sigma", r.resonant_reference}, {"ladder", 2.0}};
  j["thresholds"] = {{"s_min", (4.0 + 4.0 * r.config.gamma) / (2.0 + r.config.gamma)},
                     {"j_min", 2.0 + r.config.gamma}};
  return j;
}

}  // namespace hartree
