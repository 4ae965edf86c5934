#pragma once

#include <functional>

namespace specgap {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated |K15 - G7| estimate
  int evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Intervals are
/// bisected until each local error estimate is below its share of abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, int max_depth = 40);

}  // namespace specgap
