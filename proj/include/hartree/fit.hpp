#pragma once

#include <string>
#include <vector>

namespace hartree {

enum class FitModel { eps_power, sigma_power, joint };

const char* to_string(FitModel model);
FitModel parse_fit_model(const std::string& name);

struct FitPoint {
  double eps = 1.0;
  double sigma = 1.0;
  double value = 0.0;
};

struct FitReport {
  FitModel model = FitModel::sigma_power;
  /// eps_power / sigma_power: slope; joint: eps slope, with sigma_slope for sigma.
  double slope = 0.0;
  double sigma_slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual in log coordinates.
  double residual = 0.0;
  /// 95% half-width of the slope(s) from the residual spread (0 when exact or saturated).
  double half_width = 0.0;
  double sigma_half_width = 0.0;
  std::size_t points = 0;
};

/// Least squares in log-log coordinates: log y = slope log x + intercept (x = eps
/// or sigma), or log y = a log eps + b log sigma + c for the joint model.
FitReport fit_exponents(const std::vector<FitPoint>& points, FitModel model);

/// Slopes log(y_{i+1}/y_i) / log(x_{i+1}/x_i) between consecutive points.
std::vector<double> consecutive_slopes(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hartree
