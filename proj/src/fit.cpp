#include "hartree/fit.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "hartree/error.hpp"

namespace hartree {

const char* to_string(FitModel model) {
  switch (model) {
    case FitModel::eps_power: return "eps";
    case FitModel::sigma_power: return "sigma";
    case FitModel::joint: return "joint";
  }
  return "?";
}

FitModel parse_fit_model(const std::string& name) {
  if (name == "eps" || name == "eps-power") return FitModel::eps_power;
  if (name == "sigma" || name == "sigma-power") return FitModel::sigma_power;
  if (name == "joint") return FitModel::joint;
  throw ConfigError({"fit model must be one of eps, sigma, joint (got '" + name + "')"});
}

FitReport fit_exponents(const std::vector<FitPoint>& points, FitModel model) {
  const std::size_t n = points.size();
  const std::size_t p = model == FitModel::joint ? 3 : 2;
  if (n < p) throw Error("fit_exponents: need at least " + std::to_string(p) + " points");
  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = points[i];
    if (!(pt.value > 0.0)) throw Error("fit_exponents: measurements must be positive");
    if (!(pt.eps > 0.0) || !(pt.sigma > 0.0)) throw Error("fit_exponents: eps and sigma must be positive");
    y(i) = std::log(pt.value);
    if (model == FitModel::joint) {
      A(i, 0) = std::log(pt.eps);
      A(i, 1) = std::log(pt.sigma);
    } else {
      A(i, 0) = std::log(model == FitModel::eps_power ? pt.eps : pt.sigma);
    }
    A(i, p - 1) = 1.0;
  }
  const auto qr = A.colPivHouseholderQr();
  if (qr.rank() < static_cast<Eigen::Index>(p)) throw Error("fit_exponents: schedule does not determine the exponents");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd res = y - A * beta;

  FitReport r;
  r.model = model;
  r.points = n;
  r.slope = beta(0);
  if (model == FitModel::joint) r.sigma_slope = beta(1);
  r.intercept = beta(p - 1);
  r.residual = std::sqrt(res.squaredNorm() / static_cast<double>(n));
  const std::size_t dof = n - p;
  if (dof > 0) {
    const double s2 = res.squaredNorm() / static_cast<double>(dof);
    const Eigen::MatrixXd cov = s2 * (A.transpose() * A).inverse();
    const double t = boost::math::quantile(boost::math::students_t(static_cast<double>(dof)), 0.975);
    r.half_width = t * std::sqrt(cov(0, 0));
    if (model == FitModel::joint) r.sigma_half_width = t * std::sqrt(cov(1, 1));
  }
  return r;
}

std::vector<double> consecutive_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("consecutive_slopes: length mismatch");
  std::vector<double> s;
  for (std::size_t i = 1; i < x.size(); ++i) s.push_back(std::log(y[i] / y[i - 1]) / std::log(x[i] / x[i - 1]));
  return s;
}

}  // namespace hartree
