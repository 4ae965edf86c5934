#include "specgap/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specgap/errors.hpp"
#include "specgap/solver.hpp"

namespace specgap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kSphereProvenance =
    "round sphere of radius 1/2 (lambda1 = n / a^2), derived internally";
const char* const kExternalProvenance =
    "external spectrum, verify via m=1 oracle and literature";

}  // namespace

bool ModelSpace::compact() const { return std::isfinite(diameter); }

std::vector<ModelSpace> builtin_models(int max_m) {
  std::vector<ModelSpace> out;
  const double half_pi = std::numbers::pi / 2.0;
  for (int m = 1; m <= max_m; ++m) {
    const std::string ms = std::to_string(m);
    // Kahler models: H = 4 k1, Ric_perp = (2m - 2) k2.
    out.push_back({"C^" + ms, Kahler{m, 0.0, 0.0}, kInf, std::nullopt, "flat model"});
    out.push_back({"CP^" + ms, Kahler{m, 1.0, 1.0}, half_pi, 4.0 * (m + 1),
                   m == 1 ? kSphereProvenance : kExternalProvenance});
    out.push_back({"CH^" + ms, Kahler{m, -1.0, -1.0}, kInf, std::nullopt, "hyperbolic model"});
    // Quaternion-Kahler models: Q = 12 k1, Ric_perp = (4m - 4) k2.
    out.push_back({"H^" + ms, QuaternionKahler{m, 0.0, 0.0}, kInf, std::nullopt, "flat model"});
    out.push_back({"HP^" + ms, QuaternionKahler{m, 1.0, 1.0}, half_pi, 8.0 * (m + 1),
                   m == 1 ? kSphereProvenance : kExternalProvenance});
    out.push_back({"HH^" + ms, QuaternionKahler{m, -1.0, -1.0}, kInf, std::nullopt,
                   "hyperbolic model"});
  }
  return out;
}

std::string ConsistencyReport::failure() const {
  std::ostringstream os;
  os.precision(12);
  if (!below_spectrum) {
    os << model << ": delta = " << delta << " exceeds lambda1 (1 + 1e-3) with lambda1 = " << lambda1;
  }
  if (!above_envelope) {
    if (!below_spectrum) os << "; ";
    os << model << ": delta = " << delta << " is below the classical envelope bound "
       << envelope_delta << " - 1e-6";
  }
  return os.str();
}

ConsistencyReport check_consistency(const ModelSpace& model, int grid_n) {
  if (!model.compact() || !model.lambda1) {
    throw ConsistencyFailure(model.name + " is not compact with a reference spectrum");
  }
  ConsistencyReport rep;
  rep.model = model.name;
  rep.diameter = model.diameter * (1.0 - 1e-9);
  rep.lambda1 = *model.lambda1;
  rep.delta = optimal_bound(make_operator(model.cls, rep.diameter), grid_n).delta;
  rep.envelope_delta =
      optimal_bound(make_operator(classical_envelope(model.cls), rep.diameter), grid_n).delta;
  rep.below_spectrum = rep.delta <= rep.lambda1 * (1.0 + 1e-3);
  rep.above_envelope = rep.delta >= rep.envelope_delta - 1e-6;
  return rep;
}

ConsistencyReport consistency_check(const ModelSpace& model, int grid_n) {
  ConsistencyReport rep = check_consistency(model, grid_n);
  if (!rep.pass()) throw ConsistencyFailure(rep.failure());
  return rep;
}

}  // namespace specgap
