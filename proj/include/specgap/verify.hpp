#pragma once

#include <string>
#include <vector>

namespace specgap {

struct VerifyRow {
  std::string name;
  bool pass = false;
  double worst = 0.0;      // worst observed deviation
  double tolerance = 0.0;  // allowed deviation
  std::string detail;
};

/// Energy and scaling identities, envelope domination, closed-form exactness
/// cases and diameter admissibility. Deterministic; runs in about a second.
std::vector<VerifyRow> run_identity_suite();

}  // namespace specgap
