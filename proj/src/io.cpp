#include "specgap/io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "specgap/errors.hpp"

namespace specgap {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidClass("cannot parse " + key + "='" + text + "' as a finite real");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidClass("cannot parse " + key + "='" + text + "' as an integer");
  }
  return v;
}

const std::string& require_key(const std::map<std::string, std::string>& keys,
                               const std::string& key) {
  auto it = keys.find(key);
  if (it == keys.end()) throw InvalidClass("missing class parameter '" + key + "'");
  return it->second;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const CurvatureClass& cls) {
  return std::visit(
      overloaded{[](const Riemannian& c) {
                   return json{{"family", "riemannian"}, {"n", c.n}, {"k", c.k}};
                 },
                 [](const Kahler& c) {
                   return json{{"family", "kahler"}, {"m", c.m}, {"k1", c.k1}, {"k2", c.k2}};
                 },
                 [](const QuaternionKahler& c) {
                   return json{{"family", "quaternion-kahler"}, {"m", c.m}, {"k1", c.k1}, {"k2", c.k2}};
                 }},
      cls);
}

CurvatureClass class_from_json(const json& j) {
  std::map<std::string, std::string> keys;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      keys[key] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      keys[key] = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      keys[key] = json(value.get<double>()).dump();
    } else {
      throw InvalidClass("unexpected value for class key '" + key + "'");
    }
  }
  return class_from_keys(keys);
}

CurvatureClass class_from_keys(const std::map<std::string, std::string>& keys) {
  const std::string& family = require_key(keys, "family");
  CurvatureClass cls;
  if (family == "riemannian") {
    cls = Riemannian{parse_int("n", require_key(keys, "n")), parse_real("k", require_key(keys, "k"))};
  } else if (family == "kahler" || family == "quaternion-kahler") {
    const int m = parse_int("m", require_key(keys, "m"));
    const double k1 = parse_real("k1", require_key(keys, "k1"));
    // k2 carries zero weight at m = 1 and may be omitted there.
    const auto k2_it = keys.find("k2");
    const double k2 = k2_it != keys.end() ? parse_real("k2", k2_it->second)
                      : m == 1            ? 0.0
                                          : parse_real("k2", require_key(keys, "k2"));
    if (family == "kahler") cls = Kahler{m, k1, k2}; else cls = QuaternionKahler{m, k1, k2};
  } else {
    throw InvalidClass("unknown family '" + family + "'");
  }
  validate(cls);
  return cls;
}

json to_json(const BoundResult& r, const CurvatureClass* cls, double diameter) {
  json j{{"delta", r.delta},
         {"method", to_string(r.method)},
         {"witness_r", r.witness_r},
         {"monotone", r.diagnostics.monotone},
         {"grid_n", r.diagnostics.grid_n},
         {"rich_error", r.diagnostics.rich_error},
         {"class", cls ? to_json(*cls) : json(nullptr)},
         {"diameter", diameter}};
  if (r.method == BoundMethod::optimal) j["residual"] = r.diagnostics.residual;
  if (!r.diagnostics.note.empty()) j["note"] = r.diagnostics.note;
  return j;
}

json to_json(const SimResult& sim) {
  return json{{"t", sim.times},
              {"mean_g", sim.mean_g},
              {"stderr", sim.std_error},
              {"coupled_fraction", sim.coupled_fraction}};
}

json to_json(const ContractionReport& rep) {
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"t", row.t},
                    {"mean_g", row.mean_g},
                    {"bound", row.bound},
                    {"stderr", row.std_error},
                    {"margin", row.margin},
                    {"pass", row.pass}});
  }
  return json{{"header", rep.header}, {"delta", rep.delta}, {"g_rho0", rep.g_rho0},
              {"pass", rep.pass},     {"checkpoints", rows}};
}

json to_json(const ModelSpace& model) {
  return json{{"name", model.name},
              {"class", to_json(model.cls)},
              {"diameter", finite_or_null(model.diameter)},
              {"lambda1", model.lambda1 ? json(*model.lambda1) : json(nullptr)},
              {"provenance", model.provenance}};
}

json to_json(const ConsistencyReport& rep) {
  json j{{"model", rep.model},
         {"diameter", rep.diameter},
         {"delta", rep.delta},
         {"envelope_delta", rep.envelope_delta},
         {"lambda1", rep.lambda1},
         {"below_spectrum", rep.below_spectrum},
         {"above_envelope", rep.above_envelope},
         {"pass", rep.pass()}};
  if (!rep.pass()) j["failure"] = rep.failure();
  return j;
}

std::string format_sig9(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string to_csv(const SimResult& sim) {
  std::string out = "t,mean_g,stderr,coupled_fraction\n";
  for (std::size_t i = 0; i < sim.times.size(); ++i) {
    out += format_sig9(sim.times[i]) + ',' + format_sig9(sim.mean_g[i]) + ',' +
           format_sig9(sim.std_error[i]) + ',' + format_sig9(sim.coupled_fraction[i]) + '\n';
  }
  return out;
}

}  // namespace specgap
