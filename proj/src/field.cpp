#include "hartree/field.hpp"

#include <cmath>

#include "hartree/error.hpp"
#include "hartree/kernels.hpp"

namespace hartree {

ComplexField::ComplexField(const Grid& grid, Representation rep)
    : grid_(grid), values_(grid.size(), cplx{}), rep_(rep) {}

ComplexField::ComplexField(const Grid& grid, std::vector<cplx> values, Representation rep)
    : grid_(grid), values_(std::move(values)), rep_(rep) {
  if (values_.size() != grid_.size()) throw Error("ComplexField: value count does not match grid");
}

ComplexField ComplexField::sample(const Grid& grid, const std::function<cplx(double, double)>& f) {
  ComplexField out(grid);
  const auto x = grid.coordinates();
  if (grid.dim == 1) {
    for (std::size_t i = 0; i < grid.n; ++i) out.values_[i] = f(x[i], 0.0);
  } else {
    for (std::size_t a = 0; a < grid.n; ++a)
      for (std::size_t b = 0; b < grid.n; ++b) out.values_[a * grid.n + b] = f(x[a], x[b]);
  }
  return out;
}

double ComplexField::l2_norm_squared() const {
  return kernels::sum_abs2(values_) * grid_.cell_volume();
}

double ComplexField::l2_norm() const { return std::sqrt(l2_norm_squared()); }

cplx ComplexField::inner(const ComplexField& other) const {
  check_compatible(other, "inner");
  return kernels::inner(values_, other.values_) * grid_.cell_volume();
}

double ComplexField::max_abs() const { return kernels::max_abs(values_); }

void ComplexField::check_compatible(const ComplexField& other, const char* where) const {
  require_same_grid(grid_, other.grid_, where);
  if (rep_ != other.rep_) throw Error(std::string(where) + ": representation mismatch");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) { return add_scaled(1.0, other); }

ComplexField& ComplexField::operator-=(const ComplexField& other) { return add_scaled(-1.0, other); }

ComplexField& ComplexField::operator*=(cplx s) {
  kernels::scale(values_, s);
  return *this;
}

ComplexField& ComplexField::add_scaled(cplx alpha, const ComplexField& other) {
  check_compatible(other, "add_scaled");
  kernels::axpy(values_, alpha, other.values_);
  return *this;
}

double relative_l2_error(const ComplexField& a, const ComplexField& b) {
  const double diff = (a - b).l2_norm();
  const double ref = b.l2_norm();
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace hartree
