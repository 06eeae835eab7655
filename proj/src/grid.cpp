#include "hartree/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hartree/error.hpp"

namespace hartree {

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

double Grid::cell_volume() const {
  const double h = dx();
  return dim == 1 ? h : h * h;
}

long Grid::mode(std::size_t k) const {
  const long kk = static_cast<long>(k);
  const long nn = static_cast<long>(n);
  return kk < nn / 2 ? kk : kk - nn;
}

double Grid::wavenumber(std::size_t k) const {
  return static_cast<double>(mode(k)) * frequency_spacing();
}

double Grid::frequency_spacing() const { return std::numbers::pi / half_width; }

std::vector<double> Grid::coordinates() const {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = coordinate(i);
  return x;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> xi(n);
  for (std::size_t k = 0; k < n; ++k) xi[k] = wavenumber(k);
  return xi;
}

std::vector<double> Grid::wavenumber_squared() const {
  const auto xi = wavenumbers();
  std::vector<double> out(size());
  if (dim == 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = xi[k] * xi[k];
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out[a * n + b] = xi[a] * xi[a] + xi[b] * xi[b];
  }
  return out;
}

std::vector<double> Grid::radius_squared() const {
  const auto x = coordinates();
  std::vector<double> out(size());
  if (dim == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i];
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out[a * n + b] = x[a] * x[a] + x[b] * x[b];
  }
  return out;
}

Grid make_grid(int d, std::size_t n, double half_width) {
  std::vector<std::string> bad;
  if (d != 1 && d != 2) bad.push_back("dimension d must be 1 or 2 (got " + std::to_string(d) + ")");
  if (n < 16 || (n & (n - 1)) != 0)
    bad.push_back("points per axis n must be a power of two >= 16 (got " + std::to_string(n) + ")");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) bad.push_back("half-width L must be positive");
  if (!bad.empty()) throw ConfigError(std::move(bad));
  return Grid{d, n, half_width};
}

Grid dual_grid(const Grid& g) { return Grid{g.dim, g.n, std::numbers::pi / g.dx()}; }

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw Error(std::string(where) + ": grid mismatch");
}

}  // namespace hartree
