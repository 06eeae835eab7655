#pragma once

#include <span>
#include <vector>

#include "hartree/field.hpp"

namespace hartree {

enum class Direction { forward, inverse };

/// Unitary DFT carrying the (-1)^k phase of the grid offset, so frequency
/// samples approximate (2 pi)^{-d/2}-scaled continuum Fourier transforms up to
/// the constant sqrt(N) dx^d / (2 pi)^{d/2}. Forward requires position layout.
ComplexField transform(const ComplexField& f, Direction direction);

/// Returns the position-layout version of `f`.
ComplexField to_position(const ComplexField& f);

/// e^{it Laplacian} f via the unimodular multiplier exp(-i |xi|^2 t).
ComplexField free_propagate(const ComplexField& f, double t);

/// In-place e^{it Laplacian} on a position-layout field, with |xi|^2 precomputed.
void free_propagate_inplace(ComplexField& f, std::span<const double> k2, double t);

/// Applies a real Fourier multiplier to a position-layout field.
ComplexField fourier_multiply(const ComplexField& f, std::span<const double> symbol);

/// Spectral gradient, one component per axis.
std::vector<ComplexField> gradient(const ComplexField& f);

/// x_axis * f on the position grid.
ComplexField multiply_by_coordinate(const ComplexField& f, int axis);

/// M(t) f = exp(i |x|^2 / (4t)) f; t must be nonzero.
ComplexField apply_M(const ComplexField& f, double t);

/// J(t) f = e^{it Laplacian} x e^{-it Laplacian} f, one component per axis.
std::vector<ComplexField> apply_J(const ComplexField& f, double t);

/// J(t) f through the factorization M(t) (2it grad) M(-t) f, plus the x f term
/// at t = 0. Used to cross-check `apply_J`.
std::vector<ComplexField> apply_J_factored(const ComplexField& f, double t);

/// sqrt of the summed squared L2 norms of the components.
double component_norm(const std::vector<ComplexField>& components);

/// Zeroes every mode with |k| > n/3 on any axis (the 2/3 rule), in place on a
/// position-layout field.
void dealias(ComplexField& f);

/// Fraction of the mass lying outside the ball |x| < radius.
double mass_fraction_outside(const ComplexField& f, double radius);

}  // namespace hartree
