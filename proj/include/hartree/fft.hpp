#pragma once

#include <complex>
#include <span>

#include "hartree/grid.hpp"

namespace hartree::fft {

// In-place, unnormalized FFTW transforms over a grid's array layout. Plans are
// cached per (d, n, direction); plan creation is serialized, execution is
// reentrant, so these may be called from several threads at once.

void forward(const Grid& grid, std::span<std::complex<double>> data);
/// Unnormalized inverse: forward followed by inverse multiplies by grid.size().
void inverse(const Grid& grid, std::span<std::complex<double>> data);

}  // namespace hartree::fft
