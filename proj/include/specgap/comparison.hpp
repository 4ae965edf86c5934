#pragma once

// Comparison functions for constant-curvature model geometry.
//
// All functions take a sign-significant curvature parameter k (units
// 1/length^2). For k > 0 the trigonometric branch is used, for k < 0 the
// hyperbolic one, and k = 0 is the flat limit. Whenever |k| * t^2 is tiny the
// two-term Taylor expansion is evaluated instead so every function is
// continuous across k = 0.

namespace specgap {

/// |k| * t^2 below this value selects the Taylor branch.
inline constexpr double kSeriesThreshold = 1e-8;

/// Relative guard band on the strict pole condition sqrt(k) * r < pi.
inline constexpr double kPoleGuard = 1e-12;

/// sin(sqrt(k) t)/sqrt(k), t, or sinh(sqrt(|k|) t)/sqrt(|k|).
double sfun(double k, double t);

/// cos(sqrt(k) t), 1, or cosh(sqrt(|k|) t).
double cfun(double k, double t);

/// log(cfun(k, t)) without overflow for large hyperbolic arguments.
/// Requires cfun(k, t) > 0, i.e. sqrt(k) t < pi/2 when k > 0.
double log_cfun(double k, double t);

/// pi/sqrt(k) for k > 0, +infinity otherwise.
double pole_radius(double k);

/// True when r > 0 and, for k > 0, r lies strictly inside the guarded pole.
bool admissible_radius(double k, double r);

/// Interpolating Jacobi profile on [0, r]:
///   j(t) = c(t) + (1 - c(r)) / s(r) * s(t),  j(0) = j(r) = 1.
/// Throws EndpointSingular when s(r) vanishes (r <= 0 or at the pole).
double jfun(double k, double r, double t);

/// d/dt of jfun(k, r, t).
double jfun_dt(double k, double r, double t);

/// Drift comparison function
///   G(k, r) = -2 sqrt(k) tan(sqrt(k) r / 2)      k > 0
///           = 0                                 k = 0
///           = 2 sqrt(|k|) tanh(sqrt(|k|) r / 2)  k < 0
/// Throws DomainError for r <= 0 or r at/after the pole pi/sqrt(k).
double big_g(double k, double r);

/// d/dr G(k, r) = -k / cfun(k, r/2)^2.
double big_g_dr(double k, double r);

/// Energy of the Jacobi profile, int_0^r (j'^2 - k j^2) dt, by adaptive
/// Gauss-Kronrod quadrature. Equals big_g(k, r) up to quadrature error.
double index_energy(double k, double r);

}  // namespace specgap
