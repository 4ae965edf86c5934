#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "specgap/catalog.hpp"
#include "specgap/coupling_sim.hpp"
#include "specgap/geometry.hpp"
#include "specgap/solver.hpp"

namespace specgap {

using json = nlohmann::json;

// Flat key set: {"family", "n"|"m", "k"|"k1", "k2"}.
json to_json(const CurvatureClass& cls);
CurvatureClass class_from_json(const json& j);
/// Same keys as strings, as collected from command-line flags.
CurvatureClass class_from_keys(const std::map<std::string, std::string>& keys);

/// {delta, method, witness_r, monotone, grid_n, rich_error, class, diameter},
/// plus "residual" and "note" when present.
json to_json(const BoundResult& result, const CurvatureClass* cls, double diameter);
json to_json(const SimResult& sim);
json to_json(const ContractionReport& report);
json to_json(const ModelSpace& model);
json to_json(const ConsistencyReport& report);

/// Locale-independent "%.9g"-style rendering.
std::string format_sig9(double x);

/// Header "t,mean_g,stderr,coupled_fraction", LF line endings.
std::string to_csv(const SimResult& sim);

}  // namespace specgap
