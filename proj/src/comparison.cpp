#include "specgap/comparison.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specgap/errors.hpp"
#include "specgap/quadrature.hpp"

namespace specgap {
namespace {

bool use_series(double k, double t) { return std::abs(k) * t * t < kSeriesThreshold; }

void require_finite_k(double k) {
  if (!std::isfinite(k)) throw DomainError("curvature parameter must be finite");
}

// Unchecked kernels; t may be negative (s odd, c even).
double s_raw(double k, double t) {
  if (use_series(k, t)) return t - k * t * t * t / 6.0;
  if (k > 0.0) {
    const double rk = std::sqrt(k);
    return std::sin(rk * t) / rk;
  }
  const double rk = std::sqrt(-k);
  return std::sinh(rk * t) / rk;
}

double c_raw(double k, double t) {
  if (use_series(k, t)) return 1.0 - 0.5 * k * t * t;
  if (k > 0.0) return std::cos(std::sqrt(k) * t);
  return std::cosh(std::sqrt(-k) * t);
}

std::string describe(double k, double r) {
  std::ostringstream os;
  os.precision(17);
  os << "(k=" << k << ", r=" << r << ")";
  return os.str();
}

void require_profile_endpoint(double k, double r) {
  require_finite_k(k);
  if (!admissible_radius(k, r)) {
    throw EndpointSingular("s(k, r) vanishes or r is past the pole for " +
                           describe(k, r));
  }
}

}  // namespace

double sfun(double k, double t) {
  require_finite_k(k);
  if (!(t >= 0.0)) throw DomainError("sfun requires t >= 0");
  return s_raw(k, t);
}

double cfun(double k, double t) {
  require_finite_k(k);
  if (!(t >= 0.0)) throw DomainError("cfun requires t >= 0");
  return c_raw(k, t);
}

double log_cfun(double k, double t) {
  require_finite_k(k);
  t = std::abs(t);
  if (use_series(k, t)) return std::log1p(-0.5 * k * t * t);
  if (k > 0.0) {
    const double c = std::cos(std::sqrt(k) * t);
    if (!(c > 0.0)) throw DomainError("log_cfun past the first zero of cos");
    return std::log(c);
  }
  // log cosh x = x + log1p(exp(-2x)) - log 2
  const double x = std::sqrt(-k) * t;
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

double pole_radius(double k) {
  if (k > 0.0) return std::numbers::pi / std::sqrt(k);
  return std::numeric_limits<double>::infinity();
}

bool admissible_radius(double k, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) return false;
  if (k > 0.0) return std::sqrt(k) * r < std::numbers::pi * (1.0 - kPoleGuard);
  return true;
}

// Evaluated in the centered form c(t - r/2) / c(r/2), which is algebraically
// identical to c(t) + (1 - c(r))/s(r) s(t) and keeps j(0) = j(r) = 1 exact.
double jfun(double k, double r, double t) {
  require_profile_endpoint(k, r);
  if (!(t >= 0.0) || t > r * (1.0 + 1e-12)) throw DomainError("jfun requires 0 <= t <= r");
  return c_raw(k, std::abs(t - 0.5 * r)) / c_raw(k, 0.5 * r);
}

double jfun_dt(double k, double r, double t) {
  require_profile_endpoint(k, r);
  if (!(t >= 0.0) || t > r * (1.0 + 1e-12)) throw DomainError("jfun_dt requires 0 <= t <= r");
  return -k * s_raw(k, t - 0.5 * r) / c_raw(k, 0.5 * r);
}

double big_g(double k, double r) {
  require_finite_k(k);
  if (!(r > 0.0)) throw DomainError("G(k, r) requires r > 0, got " + describe(k, r));
  if (!admissible_radius(k, r)) {
    throw DomainError("G(k, r) requires r < pi/sqrt(k), got " + describe(k, r));
  }
  if (use_series(k, r)) return -k * r - k * k * r * r * r / 12.0;
  if (k > 0.0) {
    const double rk = std::sqrt(k);
    return -2.0 * rk * std::tan(0.5 * rk * r);
  }
  const double rk = std::sqrt(-k);
  return 2.0 * rk * std::tanh(0.5 * rk * r);
}

double big_g_dr(double k, double r) {
  require_finite_k(k);
  if (!(r > 0.0) || !admissible_radius(k, r)) {
    throw DomainError("G'(k, r) outside the admissible range " + describe(k, r));
  }
  if (use_series(k, r)) return -k - 0.25 * k * k * r * r;
  const double c = c_raw(k, 0.5 * r);
  return -k / (c * c);
}

double index_energy(double k, double r) {
  require_profile_endpoint(k, r);
  const double half = 0.5 * r;
  const double c_half = c_raw(k, half);
  auto integrand = [k, half, c_half](double t) {
    const double j = c_raw(k, std::abs(t - half)) / c_half;
    const double dj = -k * s_raw(k, t - half) / c_half;
    return dj * dj - k * j * j;
  };
  return integrate(integrand, 0.0, r, 1e-10).value;
}

}  // namespace specgap
