#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace s2xr {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;        ///< estimated absolute error
  std::size_t evaluations = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Bisects the panel with the largest error estimate until the summed
/// estimate is below `abs_tol` or `max_evaluations` is exhausted.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, std::size_t max_evaluations = 1'000'000);

/// Nested adaptive quadrature of f(x, y) over [x0, x1] x [y0, y1]; the outer
/// integral runs over x. Inner integrals are solved to a tolerance scaled by
/// the outer interval length so the total error stays below `abs_tol`.
QuadratureResult integrate_2d(const std::function<double(double, double)>& f, double x0,
                              double x1, double y0, double y1, double abs_tol,
                              std::size_t max_evaluations = 1'000'000);

}  // namespace s2xr
