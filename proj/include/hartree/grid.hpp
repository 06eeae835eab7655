#pragma once

#include <cstddef>
#include <vector>

namespace hartree {

/// Periodic Cartesian grid on [-L, L)^d with n points per axis.
///
/// Position samples sit at x_i = -L + i*dx. Frequency samples use FFT order:
/// index k < n/2 maps to wavenumber pi*k/L and k >= n/2 to pi*(k-n)/L.
/// Two-dimensional arrays are row-major with the first axis slowest.
struct Grid {
  int dim = 1;
  std::size_t n = 16;
  double half_width = 1.0;

  double dx() const { return 2.0 * half_width / static_cast<double>(n); }
  std::size_t size() const { return dim == 1 ? n : n * n; }
  /// dx^d, the quadrature weight of one cell.
  double cell_volume() const;
  double coordinate(std::size_t i) const { return -half_width + static_cast<double>(i) * dx(); }
  /// Signed integer mode number of FFT-order index k.
  long mode(std::size_t k) const;
  double wavenumber(std::size_t k) const;
  /// Spacing of the frequency lattice, pi/L.
  double frequency_spacing() const;

  std::vector<double> coordinates() const;
  std::vector<double> wavenumbers() const;
  /// |xi|^2 over the full frequency array in FFT order.
  std::vector<double> wavenumber_squared() const;
  /// |x|^2 over the full position array.
  std::vector<double> radius_squared() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim == b.dim && a.n == b.n && a.half_width == b.half_width;
  }
};

Grid make_grid(int d, std::size_t n, double half_width);

/// Grid whose positions are the frequency lattice of `g`: half-width pi/dx,
/// spacing pi/L, same n. Used for far-field evaluation of the free flow.
Grid dual_grid(const Grid& g);

/// Throws if two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace hartree
