#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hartree/grid.hpp"

namespace hartree {

using cplx = std::complex<double>;

enum class Representation { position, frequency };

/// Complex samples of a function on a Grid, in position or frequency layout.
///
/// Norms use the continuum measure: sum |f|^2 dx^d. The frequency layout is the
/// unitary DFT, so the same weight makes Plancherel hold.
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(const Grid& grid, Representation rep = Representation::position);
  ComplexField(const Grid& grid, std::vector<cplx> values,
               Representation rep = Representation::position);

  /// Samples f(x) (d = 1) or f(x, y) (d = 2) on the position grid.
  static ComplexField sample(const Grid& grid, const std::function<cplx(double, double)>& f);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  std::size_t size() const { return values_.size(); }

  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  double l2_norm() const;
  double l2_norm_squared() const;
  /// <this, other> = sum this * conj(other) dx^d.
  cplx inner(const ComplexField& other) const;
  double max_abs() const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(cplx s);
  /// this += alpha * other.
  ComplexField& add_scaled(cplx alpha, const ComplexField& other);

  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }
  friend ComplexField operator*(ComplexField a, cplx s) { return a *= s; }

 private:
  void check_compatible(const ComplexField& other, const char* where) const;

  Grid grid_{};
  std::vector<cplx> values_;
  Representation rep_ = Representation::position;
};

/// ||a - b|| / ||b||, or ||a - b|| when b vanishes.
double relative_l2_error(const ComplexField& a, const ComplexField& b);

}  // namespace hartree
