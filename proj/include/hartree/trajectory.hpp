#pragma once

#include <vector>

#include "hartree/field.hpp"

namespace hartree {

enum class Picture { physical, interaction };

/// Time-indexed fields on one grid. Times are strictly monotone (decreasing for
/// backward solves).
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexField> fields;
  Picture picture = Picture::physical;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const Grid& grid() const { return fields.front().grid(); }
  void push(double t, ComplexField f);
  /// Throws unless times are strictly monotone and all fields share one grid.
  void validate() const;
};

}  // namespace hartree
