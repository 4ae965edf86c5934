#pragma once

#include <string>
#include <variant>
#include <vector>

namespace specgap {

/// Ric >= (n - 1) k.
struct Riemannian {
  int n = 2;
  double k = 0.0;
  bool operator==(const Riemannian&) const = default;
};

/// Complex dimension m, H >= 4 k1 and Ric_perp >= (2m - 2) k2.
struct Kahler {
  int m = 1;
  double k1 = 0.0;
  double k2 = 0.0;
  bool operator==(const Kahler&) const = default;
};

/// Quaternionic dimension m, Q >= 12 k1 and Ric_perp >= (4m - 4) k2.
struct QuaternionKahler {
  int m = 1;
  double k1 = 0.0;
  double k2 = 0.0;
  bool operator==(const QuaternionKahler&) const = default;
};

using CurvatureClass = std::variant<Riemannian, Kahler, QuaternionKahler>;

/// "riemannian", "kahler" or "quaternion-kahler".
std::string family_name(const CurvatureClass& cls);
int real_dimension(const CurvatureClass& cls);
std::string describe(const CurvatureClass& cls);

/// Throws InvalidClass for non-finite curvature or dimension below 2 (real).
void validate(const CurvatureClass& cls);

/// One weighted comparison term weight * G(curvature, scale * r).
struct DriftTerm {
  double weight = 0.0;
  double curvature = 0.0;
  double scale = 1.0;

  bool operator==(const DriftTerm&) const = default;
};

/// Radial drift b(r) = sum_i weight_i * G(curvature_i, scale_i * r) on (0, diameter).
struct DriftSpec {
  std::vector<DriftTerm> terms;
  double diameter = 0.0;

  double value(double r) const;
  double derivative(double r) const;
  /// B(r) with B' = b/4 and B(0) = 0, in closed form:
  /// B(r) = sum_i (weight_i / scale_i) * log c(curvature_i, scale_i r / 2).
  double log_weight(double r) const;
  /// Smallest radius at which some weighted term hits its pole (or +inf).
  double pole() const;
  /// Upper bound on b over (0, inf): sum of the positive hyperbolic parts.
  double positive_bound() const;
  bool is_zero() const;
};

struct DiameterConstraint {
  double bound = 0.0;
  std::string label;  // e.g. "π/(2√k₁)"
};

/// Positive-curvature diameter constraints carried by terms with nonzero weight.
std::vector<DiameterConstraint> diameter_constraints(const CurvatureClass& cls);

/// Minimum over diameter_constraints, or +infinity.
double max_diameter(const CurvatureClass& cls);

/// Throws AdmissibilityError unless 0 < D < max_diameter (strict, guarded).
void require_admissible_diameter(const CurvatureClass& cls, double D);

/// Shrinks D to max_diameter * (1 - 1e-9) when it reaches the bound.
double clip_diameter(const CurvatureClass& cls, double D);

DriftSpec drift_spec(const CurvatureClass& cls, double D);
double drift_value(const DriftSpec& spec, double r);

/// Upper bound on the index-form sum along a geodesic of length r. Same
/// expression as the drift.
double index_upper_bound(const CurvatureClass& cls, double r);

/// Riemannian class carrying the averaged Ricci lower bound of a Kahler or
/// quaternion-Kahler class. Throws InvalidClass for Riemannian input.
Riemannian classical_envelope(const CurvatureClass& cls);

}  // namespace specgap
