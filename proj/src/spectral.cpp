#include "hartree/spectral.hpp"

#include <cmath>

#include "hartree/error.hpp"
#include "hartree/fft.hpp"
#include "hartree/kernels.hpp"

namespace hartree {

namespace {

// (-1)^k along each axis; for even n this equals exp(i L xi_k).
void apply_grid_offset_phase(ComplexField& f) {
  const Grid& g = f.grid();
  auto v = f.values();
  if (g.dim == 1) {
    for (std::size_t k = 1; k < g.n; k += 2) v[k] = -v[k];
  } else {
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = 0; b < g.n; ++b)
        if ((a + b) % 2 == 1) v[a * g.n + b] = -v[a * g.n + b];
  }
}

}  // namespace

ComplexField transform(const ComplexField& f, Direction direction) {
  const bool fwd = direction == Direction::forward;
  const auto expected = fwd ? Representation::position : Representation::frequency;
  if (f.representation() != expected)
    throw Error(fwd ? "transform: forward transform requires position representation"
                    : "transform: inverse transform requires frequency representation");
  ComplexField out = f;
  const double norm = 1.0 / std::sqrt(static_cast<double>(f.size()));
  if (fwd) {
    fft::forward(f.grid(), out.values());
    apply_grid_offset_phase(out);
  } else {
    apply_grid_offset_phase(out);
    fft::inverse(f.grid(), out.values());
  }
  kernels::scale(out.values(), norm);
  return ComplexField(f.grid(), std::vector<cplx>(out.values().begin(), out.values().end()),
                      fwd ? Representation::frequency : Representation::position);
}

ComplexField to_position(const ComplexField& f) {
  return f.representation() == Representation::position ? f : transform(f, Direction::inverse);
}

ComplexField fourier_multiply(const ComplexField& f, std::span<const double> symbol) {
  if (f.representation() != Representation::position)
    throw Error("fourier_multiply: position representation required");
  ComplexField out = f;
  fft::forward(f.grid(), out.values());
  kernels::multiply(out.values(), symbol);
  fft::inverse(f.grid(), out.values());
  kernels::scale(out.values(), 1.0 / static_cast<double>(f.size()));
  return out;
}

ComplexField free_propagate(const ComplexField& f, double t) {
  ComplexField out = to_position(f);
  if (t == 0.0) return out;
  const auto k2 = f.grid().wavenumber_squared();
  fft::forward(out.grid(), out.values());
  kernels::free_phase(out.values(), k2, t);
  fft::inverse(out.grid(), out.values());
  kernels::scale(out.values(), 1.0 / static_cast<double>(out.size()));
  return out;
}

void free_propagate_inplace(ComplexField& f, std::span<const double> k2, double t) {
  if (f.representation() != Representation::position)
    throw Error("free_propagate_inplace: position representation required");
  if (t == 0.0) return;
  fft::forward(f.grid(), f.values());
  kernels::free_phase(f.values(), k2, t);
  fft::inverse(f.grid(), f.values());
  kernels::scale(f.values(), 1.0 / static_cast<double>(f.size()));
}

std::vector<ComplexField> gradient(const ComplexField& f) {
  const ComplexField pos = to_position(f);
  const Grid& g = pos.grid();
  const auto xi = g.wavenumbers();
  ComplexField spec = pos;
  fft::forward(g, spec.values());
  std::vector<ComplexField> out;
  for (int axis = 0; axis < g.dim; ++axis) {
    ComplexField c = spec;
    auto v = c.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t k = (g.dim == 1 || axis == 1) ? i % g.n : i / g.n;
      // The Nyquist mode has no antisymmetric partner; drop it.
      const double kx = g.mode(k) == -static_cast<long>(g.n / 2) ? 0.0 : xi[k];
      v[i] *= cplx(0.0, kx);
    }
    fft::inverse(g, c.values());
    kernels::scale(c.values(), 1.0 / static_cast<double>(c.size()));
    out.push_back(std::move(c));
  }
  return out;
}

ComplexField multiply_by_coordinate(const ComplexField& f, int axis) {
  ComplexField out = to_position(f);
  const Grid& g = out.grid();
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t idx = (g.dim == 1 || axis == 1) ? i % g.n : i / g.n;
    v[i] *= g.coordinate(idx);
  }
  return out;
}

ComplexField apply_M(const ComplexField& f, double t) {
  if (t == 0.0) throw Error("apply_M: t must be nonzero");
  ComplexField out = to_position(f);
  const auto r2 = out.grid().radius_squared();
  // exp(i r^2 / 4t) = exp(-i * dt * v) with v = r^2, dt = -1/(4t).
  kernels::phase_multiply(out.values(), r2, -1.0 / (4.0 * t));
  return out;
}

std::vector<ComplexField> apply_J(const ComplexField& f, double t) {
  const ComplexField back = free_propagate(f, -t);
  std::vector<ComplexField> out;
  for (int axis = 0; axis < f.grid().dim; ++axis)
    out.push_back(free_propagate(multiply_by_coordinate(back, axis), t));
  return out;
}

std::vector<ComplexField> apply_J_factored(const ComplexField& f, double t) {
  std::vector<ComplexField> out;
  if (t == 0.0) {
    for (int axis = 0; axis < f.grid().dim; ++axis) out.push_back(multiply_by_coordinate(f, axis));
    return out;
  }
  auto grad = gradient(apply_M(f, -t));
  for (auto& c : grad) {
    c *= cplx(0.0, 2.0 * t);
    out.push_back(apply_M(c, t));
  }
  return out;
}

double component_norm(const std::vector<ComplexField>& components) {
  double s = 0.0;
  for (const auto& c : components) s += c.l2_norm_squared();
  return std::sqrt(s);
}

void dealias(ComplexField& f) {
  if (f.representation() != Representation::position) throw Error("dealias: position representation required");
  const Grid& g = f.grid();
  const long cutoff = static_cast<long>(g.n / 3);
  fft::forward(g, f.values());
  auto v = f.values();
  if (g.dim == 1) {
    for (std::size_t k = 0; k < g.n; ++k)
      if (std::abs(g.mode(k)) > cutoff) v[k] = 0.0;
  } else {
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = 0; b < g.n; ++b)
        if (std::abs(g.mode(a)) > cutoff || std::abs(g.mode(b)) > cutoff) v[a * g.n + b] = 0.0;
  }
  fft::inverse(g, f.values());
  kernels::scale(f.values(), 1.0 / static_cast<double>(f.size()));
}

double mass_fraction_outside(const ComplexField& f, double radius) {
  const ComplexField pos = to_position(f);
  const auto r2 = pos.grid().radius_squared();
  const double lim = radius * radius;
  double outside = 0.0;
  double total = 0.0;
  auto v = pos.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::norm(v[i]);
    total += m;
    if (r2[i] >= lim) outside += m;
  }
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace hartree
