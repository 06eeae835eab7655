#include "hartree/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hartree/error.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

const char* to_string(Anchor anchor) { return anchor == Anchor::initial ? "initial" : "final_state"; }

namespace {

const std::vector<double>& shared_times(const Trajectory& a, const Trajectory& b, const Trajectory& c) {
  const Trajectory* ref = nullptr;
  for (const Trajectory* t : {&a, &b, &c}) {
    if (t->empty()) continue;
    if (!ref) {
      ref = t;
    } else if (t->times != ref->times) {
      throw Error("nonlinear_N: trajectories are sampled on different time grids");
    }
    if (t->picture != Picture::physical) throw Error("nonlinear_N: physical-picture trajectories required");
  }
  if (!ref) throw Error("nonlinear_N: all arguments are empty");
  return ref->times;
}

}  // namespace

std::vector<ComplexField> duhamel_integrand(const Trajectory& a, const Trajectory& b, const Trajectory& c,
                                            const HartreeKernel& kernel) {
  if (a.empty() || b.empty() || c.empty()) return {};
  const auto& times = shared_times(a, b, c);
  std::vector<ComplexField> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    out.push_back(free_propagate(trilinear_T(a.fields[i], b.fields[i], c.fields[i], kernel), -times[i]));
  return out;
}

void accumulate(std::vector<ComplexField>& acc, const std::vector<ComplexField>& add) {
  if (add.empty()) return;
  if (acc.empty()) {
    acc = add;
    return;
  }
  if (acc.size() != add.size()) throw Error("accumulate: sample count mismatch");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += add[i];
}

namespace {

std::vector<ComplexField> cumulative_trapezoid(const std::vector<ComplexField>& g, const std::vector<double>& times) {
  std::vector<ComplexField> c;
  c.reserve(g.size());
  c.emplace_back(g.front().grid());
  for (std::size_t i = 1; i < g.size(); ++i) {
    ComplexField next = c.back();
    const double h = 0.5 * (times[i] - times[i - 1]);
    next.add_scaled(h, g[i]);
    next.add_scaled(h, g[i - 1]);
    c.push_back(std::move(next));
  }
  return c;
}

}  // namespace

Trajectory duhamel_from_integrand(const std::vector<ComplexField>& integrand, const std::vector<double>& times,
                                  Anchor anchor) {
  if (integrand.size() != times.size() || times.empty())
    throw Error("duhamel_from_integrand: integrand and time grid disagree");
  const auto c = cumulative_trapezoid(integrand, times);
  Trajectory out;
  const cplx i_unit(0.0, 1.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    ComplexField profile = anchor == Anchor::initial ? -i_unit * c[k] : i_unit * (c.back() - c[k]);
    out.push(times[k], free_propagate(profile, times[k]));
  }
  return out;
}

ComplexField duhamel_limit(const std::vector<ComplexField>& integrand, const std::vector<double>& times) {
  if (integrand.size() != times.size() || times.empty()) throw Error("duhamel_limit: integrand and time grid disagree");
  ComplexField acc(integrand.front().grid());
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = 0.5 * (times[i] - times[i - 1]);
    acc.add_scaled(h, integrand[i]);
    acc.add_scaled(h, integrand[i - 1]);
  }
  return cplx(0.0, -1.0) * acc;
}

DuhamelTerm nonlinear_N(const Trajectory& a, const Trajectory& b, const Trajectory& c, const HartreeKernel& kernel,
                        Anchor anchor) {
  const auto& times = shared_times(a, b, c);
  DuhamelTerm out;
  const auto g = duhamel_integrand(a, b, c, kernel);
  if (g.empty()) {
    out.value = zero_trajectory(kernel.grid, times);
    return out;
  }
  out.value = duhamel_from_integrand(g, times, anchor);
  const double T = std::abs(times.back());
  if (kernel.gamma > 1.0) out.tail_estimate = g.back().l2_norm() * T / (kernel.gamma - 1.0);
  return out;
}

std::vector<std::array<int, 3>> distinct_permutations(std::array<int, 3> labels) {
  std::sort(labels.begin(), labels.end());
  std::vector<std::array<int, 3>> out;
  do {
    out.push_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

SymmetricSum symmetric_sum_N(std::array<int, 3> labels, const std::vector<Trajectory>& pool,
                             const HartreeKernel& kernel, Anchor anchor) {
  for (int l : labels)
    if (l < 0 || static_cast<std::size_t>(l) >= pool.size())
      throw Error("symmetric_sum_N: label " + std::to_string(l) + " does not name a computed trajectory");
  SymmetricSum out;
  std::vector<ComplexField> g;
  for (const auto& p : distinct_permutations(labels)) {
    accumulate(g, duhamel_integrand(pool[p[0]], pool[p[1]], pool[p[2]], kernel));
    ++out.summands;
  }
  const auto& times = pool[labels[0]].times;
  out.value = g.empty() ? zero_trajectory(kernel.grid, times) : duhamel_from_integrand(g, times, anchor);
  return out;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw Error("sup_distance: sample count mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a.fields[i] - b.fields[i]).l2_norm());
  return m;
}

Trajectory zero_trajectory(const Grid& grid, const std::vector<double>& times) {
  Trajectory out;
  for (double t : times) out.push(t, ComplexField(grid));
  return out;
}

Trajectory free_trajectory(const ComplexField& v, const std::vector<double>& times) {
  Trajectory out;
  for (double t : times) out.push(t, free_propagate(v, t));
  return out;
}

std::vector<double> uniform_times(double T, std::size_t intervals) {
  if (intervals == 0 || !(T != 0.0)) throw Error("uniform_times: need T != 0 and at least one interval");
  std::vector<double> t(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) t[i] = T * static_cast<double>(i) / static_cast<double>(intervals);
  t.back() = T;
  return t;
}

PicardResult picard(const Trajectory& base, const std::function<Trajectory(const Trajectory&)>& map,
                    const PicardOptions& options) {
  PicardResult r;
  Trajectory x = base;
  double previous = 0.0;
  int growth = 0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Trajectory next = map(x);
    for (std::size_t i = 0; i < next.size(); ++i) next.fields[i] += base.fields[i];
    const double scale = std::max(sup_l2(next), 1e-300);
    const double change = sup_distance(next, x) / scale;
    x = std::move(next);
    r.iterations = it;
    r.change = change;
    if (previous > 0.0) r.contraction = change / previous;
    if (change < options.tol || change == 0.0) {
      r.solution = std::move(x);
      return r;
    }
    if (previous > 0.0 && change >= previous) {
      if (++growth >= 3)
        throw ContractionFailure("picard: iteration is not contracting (factor " + std::to_string(r.contraction) + ")",
                                 r.contraction);
    } else {
      growth = 0;
    }
    previous = change;
  }
  throw ContractionFailure("picard: no convergence in " + std::to_string(options.max_iterations) + " iterations",
                           r.contraction);
}

}  // namespace hartree
