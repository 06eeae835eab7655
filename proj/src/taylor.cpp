#include "hartree/taylor.hpp"

#include <algorithm>
#include <cmath>

#include "hartree/error.hpp"
#include "hartree/kernels.hpp"
#include "hartree/propagator.hpp"
#include "hartree/spectral.hpp"

namespace hartree {

namespace {

// (K * 2 Re(a conj(b))) c, or (K * |a|^2) c when `same`.
void add_product(std::vector<cplx>& acc, const ComplexField& a, const ComplexField& b, const ComplexField& c,
                 const HartreeKernel& kernel, bool same, std::vector<cplx>& scratch) {
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    const cplx p = a[i] * std::conj(b[i]);
    scratch[i] = same ? cplx(p.real(), 0.0) : cplx(2.0 * p.real(), 0.0);
  }
  convolve_in_place(kernel, scratch);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scratch[i].real() * c[i];
}

ComplexField finish_integrand(std::vector<cplx> values, const Grid& g, const HartreeKernel& kernel, double t) {
  ComplexField f(g, std::move(values));
  if (kernel.dealias) dealias(f);
  return free_propagate(f, -t);
}

struct PartIntegrands {
  ComplexField linear, mixed, resonant;
};

PartIntegrands part_integrands(const std::vector<ComplexField>& w, const HartreeKernel& kernel, double t) {
  const Grid& g = w[0].grid();
  std::vector<cplx> scratch(g.size());
  std::vector<cplx> lin(g.size()), mix(g.size()), res(g.size());
  // SN(u,u,w3): T(u,u,w3) + [T(u,w3,u) + T(w3,u,u)].
  add_product(lin, w[0], w[0], w[3], kernel, true, scratch);
  add_product(lin, w[0], w[3], w[0], kernel, false, scratch);
  // SN(u,w1,w2): the six orderings pair up into three real parts.
  add_product(mix, w[0], w[1], w[2], kernel, false, scratch);
  add_product(mix, w[0], w[2], w[1], kernel, false, scratch);
  add_product(mix, w[1], w[2], w[0], kernel, false, scratch);
  add_product(res, w[1], w[1], w[1], kernel, true, scratch);
  return {finish_integrand(std::move(lin), g, kernel, t), finish_integrand(std::move(mix), g, kernel, t),
          finish_integrand(std::move(res), g, kernel, t)};
}

}  // namespace

TaylorResult taylor_march(const ComplexField& u0_in, const ComplexField& v_in, const HartreeKernel& kernel,
                          const TaylorOptions& opt) {
  const int K = opt.order;
  if (K < 1) throw Error("taylor_march: order must be at least 1");
  if (opt.steps == 0 || opt.record_every == 0) throw Error("taylor_march: steps and record_every must be positive");
  if (opt.w3_parts && K < 3) throw Error("taylor_march: w3 parts need order >= 3");
  const ComplexField u0 = to_position(u0_in);
  const ComplexField v = to_position(v_in);
  require_same_grid(u0.grid(), kernel.grid, "taylor_march");
  require_same_grid(v.grid(), kernel.grid, "taylor_march");
  const Grid& g = kernel.grid;
  const std::size_t size = g.size();
  const double dt = opt.T / static_cast<double>(opt.steps);
  const auto k2 = g.wavenumber_squared();

  std::vector<ComplexField> u(K + 1, ComplexField(g));
  std::vector<bool> nz(K + 1, false);
  u[0] = u0;
  u[1] = v;
  nz[0] = u0.max_abs() > 0.0;
  nz[1] = v.max_abs() > 0.0;

  std::vector<ComplexField> comp;
  for (double eps : opt.companions) {
    ComplexField c = u0;
    c.add_scaled(eps, v);
    comp.push_back(std::move(c));
  }

  TaylorResult r;
  r.sup_norm.assign(K + 1, 0.0);
  r.remainder.assign(comp.size(), std::vector<double>(K + 1, 0.0));
  r.remainder_final.assign(comp.size(), std::vector<double>(K + 1, 0.0));
  if (opt.keep_trajectories) r.w.resize(K + 1);

  std::optional<PartIntegrands> prev_parts;
  W3Parts acc{ComplexField(g), ComplexField(g), ComplexField(g)};
  std::vector<ComplexField> checkpoints;  // interaction profile of w_1
  std::vector<std::size_t> checkpoint_steps;
  if (opt.profile_checkpoints > 0) {
    for (std::size_t c = 0; c < opt.profile_checkpoints; ++c)
      checkpoint_steps.push_back(opt.steps * c / opt.profile_checkpoints);
  }
  double prev_t = 0.0;

  auto record = [&](double t, std::size_t step, bool last) {
    r.record_times.push_back(t);
    for (int k = 0; k <= K; ++k) {
      r.sup_norm[k] = std::max(r.sup_norm[k], u[k].l2_norm());
      if (opt.keep_trajectories) r.w[k].push(t, u[k]);
    }
    for (std::size_t c = 0; c < comp.size(); ++c) {
      ComplexField diff = comp[c] - u[0];
      const double eps = opt.companions[c];
      double ek = 1.0;
      for (int N = 0; N <= K; ++N) {
        if (N > 0) {
          ek *= eps;
          if (nz[N]) diff.add_scaled(-ek, u[N]);
        }
        const double norm = diff.l2_norm();
        r.remainder[c][N] = std::max(r.remainder[c][N], norm);
        if (last) r.remainder_final[c][N] = norm;
      }
    }
    if (opt.w3_parts) {
      PartIntegrands cur = part_integrands(u, kernel, t);
      if (prev_parts) {
        const double h = 0.5 * (t - prev_t);
        acc.linear.add_scaled(h, cur.linear);
        acc.linear.add_scaled(h, prev_parts->linear);
        acc.mixed.add_scaled(h, cur.mixed);
        acc.mixed.add_scaled(h, prev_parts->mixed);
        acc.resonant.add_scaled(h, cur.resonant);
        acc.resonant.add_scaled(h, prev_parts->resonant);
      }
      prev_parts = std::move(cur);
    }
    if (std::find(checkpoint_steps.begin(), checkpoint_steps.end(), step) != checkpoint_steps.end() || last) {
      r.profile_times.push_back(t);
      checkpoints.push_back(free_propagate(u[1], -t));
    }
    prev_t = t;
  };

  std::vector<ComplexField> E(K + 1, ComplexField(g));
  std::vector<bool> nzE(K + 1, false);
  std::vector<std::vector<double>> V(K + 1, std::vector<double>(size));
  std::vector<bool> nzV(K + 1, false);
  std::vector<cplx> buf(size);

  record(0.0, 0, false);
  for (std::size_t s = 1; s <= opt.steps; ++s) {
    for (int k = 0; k <= K; ++k)
      if (nz[k]) free_propagate_inplace(u[k], k2, 0.5 * dt);

    for (int n = 0; n <= K; ++n) {
      nzV[n] = false;
      std::fill(buf.begin(), buf.end(), cplx(0.0));
      for (int j = 0; j <= n; ++j) {
        const int k = n - j;
        if (!nz[j] || !nz[k] || j > k) continue;
        const double w = (j == k) ? 1.0 : 2.0;
        const auto a = u[j].values();
        const auto b = u[k].values();
        for (std::size_t i = 0; i < size; ++i) buf[i] += w * (a[i] * std::conj(b[i])).real();
        nzV[n] = true;
      }
      if (!nzV[n] || kernel.is_zero()) {
        nzV[n] = false;
        continue;
      }
      convolve_in_place(kernel, buf);
      for (std::size_t i = 0; i < size; ++i) V[n][i] = buf[i].real();
    }

    {
      auto e0 = E[0].values();
      for (std::size_t i = 0; i < size; ++i) e0[i] = nzV[0] ? std::polar(1.0, -dt * V[0][i]) : cplx(1.0);
      nzE[0] = true;
    }
    for (int n = 1; n <= K; ++n) {
      auto en = E[n].values();
      std::fill(en.begin(), en.end(), cplx(0.0));
      nzE[n] = false;
      for (int k = 1; k <= n; ++k) {
        if (!nzV[k] || !nzE[n - k]) continue;
        const auto prev = E[n - k].values();
        const cplx c = cplx(0.0, -dt) * (static_cast<double>(k) / n);
        for (std::size_t i = 0; i < size; ++i) en[i] += c * V[k][i] * prev[i];
        nzE[n] = true;
      }
    }

    std::vector<bool> nz_next(K + 1, false);
    std::vector<ComplexField> z(K + 1, ComplexField(g));
    for (int n = 0; n <= K; ++n) {
      auto zn = z[n].values();
      for (int j = 0; j <= n; ++j) {
        const int k = n - j;
        if (!nzE[j] || !nz[k]) continue;
        const auto e = E[j].values();
        const auto y = u[k].values();
        for (std::size_t i = 0; i < size; ++i) zn[i] += e[i] * y[i];
        nz_next[n] = true;
      }
    }
    for (int n = 0; n <= K; ++n) {
      u[n] = std::move(z[n]);
      if (nz_next[n]) free_propagate_inplace(u[n], k2, 0.5 * dt);
    }
    nz = nz_next;

    for (auto& c : comp) {
      free_propagate_inplace(c, k2, 0.5 * dt);
      nonlinear_phase(c, dt, kernel);
      free_propagate_inplace(c, k2, 0.5 * dt);
    }

    const bool last = s == opt.steps;
    if (s % opt.record_every == 0 || last) record(last ? opt.T : dt * static_cast<double>(s), s, last);
  }

  r.vanishes.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    r.vanishes[k] = !nz[k];
    r.w_final.push_back(u[k]);
    r.w_plus.push_back(free_propagate(u[k], -opt.T));
  }
  r.companion_final = comp;
  if (opt.w3_parts) {
    const cplx mi(0.0, -1.0);
    r.parts = W3Parts{mi * acc.linear, mi * acc.mixed, mi * acc.resonant};
  }
  const double plus1 = r.w_plus[1].l2_norm();
  for (const auto& cp : checkpoints)
    r.profile_gap.push_back(plus1 > 0.0 ? (r.w_plus[1] - cp).l2_norm() / plus1 : 0.0);
  return r;
}

}  // namespace hartree
