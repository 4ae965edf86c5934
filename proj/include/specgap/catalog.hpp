#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgap/geometry.hpp"

namespace specgap {

struct ModelSpace {
  std::string name;  // e.g. "CP^2"
  CurvatureClass cls;
  double diameter = 0.0;  // +inf for non-compact models
  std::optional<double> lambda1;
  std::string provenance;

  bool compact() const;
};

/// Flat, projective and hyperbolic Kahler and quaternion-Kahler models for
/// m = 1..max_m, normalized to H = 4 and Q = 12 on the projective spaces.
std::vector<ModelSpace> builtin_models(int max_m = 3);

struct ConsistencyReport {
  std::string model;
  double diameter = 0.0;    // clipped diameter used for the solve
  double delta = 0.0;       // optimal bound for the model's class
  double envelope_delta = 0.0;
  double lambda1 = 0.0;
  bool below_spectrum = true;      // delta <= lambda1 (1 + 1e-3)
  bool above_envelope = true;      // delta >= envelope_delta - 1e-6
  bool pass() const { return below_spectrum && above_envelope; }
  std::string failure() const;     // empty when pass()
};

/// Runs the optimal bound for a compact model at D (1 - 1e-9) and compares
/// it against the reference spectrum and the classical envelope.
/// Throws ConsistencyFailure when the model has no spectrum.
ConsistencyReport check_consistency(const ModelSpace& model, int grid_n);

/// check_consistency that throws ConsistencyFailure naming the violated
/// inequality.
ConsistencyReport consistency_check(const ModelSpace& model, int grid_n);

}  // namespace specgap
