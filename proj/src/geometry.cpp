#include "specgap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specgap/comparison.hpp"
#include "specgap/errors.hpp"

namespace specgap {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<DriftTerm> drift_terms(const CurvatureClass& cls) {
  return std::visit(
      overloaded{
          [](const Riemannian& c) {
            return std::vector<DriftTerm>{{double(c.n - 1), c.k, 1.0}};
          },
          [](const Kahler& c) {
            return std::vector<DriftTerm>{{double(2 * c.m - 2), c.k2, 1.0},
                                          {2.0, c.k1, 2.0}};
          },
          [](const QuaternionKahler& c) {
            return std::vector<DriftTerm>{{double(4 * c.m - 4), c.k2, 1.0},
                                          {6.0, c.k1, 2.0}};
          }},
      cls);
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string family_name(const CurvatureClass& cls) {
  return std::visit(overloaded{[](const Riemannian&) { return std::string("riemannian"); },
                               [](const Kahler&) { return std::string("kahler"); },
                               [](const QuaternionKahler&) {
                                 return std::string("quaternion-kahler");
                               }},
                    cls);
}

int real_dimension(const CurvatureClass& cls) {
  return std::visit(overloaded{[](const Riemannian& c) { return c.n; },
                               [](const Kahler& c) { return 2 * c.m; },
                               [](const QuaternionKahler& c) { return 4 * c.m; }},
                    cls);
}

std::string describe(const CurvatureClass& cls) {
  return std::visit(
      overloaded{[](const Riemannian& c) {
                   return "riemannian(n=" + std::to_string(c.n) +
                          ", k=" + format_number(c.k) + ")";
                 },
                 [](const Kahler& c) {
                   return "kahler(m=" + std::to_string(c.m) + ", k1=" + format_number(c.k1) +
                          ", k2=" + format_number(c.k2) + ")";
                 },
                 [](const QuaternionKahler& c) {
                   return "quaternion-kahler(m=" + std::to_string(c.m) +
                          ", k1=" + format_number(c.k1) + ", k2=" + format_number(c.k2) + ")";
                 }},
      cls);
}

void validate(const CurvatureClass& cls) {
  std::visit(overloaded{[](const Riemannian& c) {
                          if (c.n < 2) throw InvalidClass("riemannian class needs n >= 2");
                          if (!std::isfinite(c.k)) throw InvalidClass("k must be finite");
                        },
                        [](const auto& c) {
                          if (c.m < 1) throw InvalidClass("m must be >= 1");
                          if (!std::isfinite(c.k1) || !std::isfinite(c.k2)) {
                            throw InvalidClass("k1 and k2 must be finite");
                          }
                        }},
             cls);
}

double DriftSpec::value(double r) const {
  double b = 0.0;
  for (const auto& t : terms) {
    if (t.weight == 0.0 || t.curvature == 0.0) continue;
    b += t.weight * big_g(t.curvature, t.scale * r);
  }
  return b;
}

double DriftSpec::derivative(double r) const {
  double db = 0.0;
  for (const auto& t : terms) {
    if (t.weight == 0.0 || t.curvature == 0.0) continue;
    db += t.weight * t.scale * big_g_dr(t.curvature, t.scale * r);
  }
  return db;
}

double DriftSpec::log_weight(double r) const {
  double b = 0.0;
  for (const auto& t : terms) {
    if (t.weight == 0.0 || t.curvature == 0.0) continue;
    b += (t.weight / t.scale) * log_cfun(t.curvature, 0.5 * t.scale * r);
  }
  return b;
}

double DriftSpec::pole() const {
  double p = kInf;
  for (const auto& t : terms) {
    if (t.weight > 0.0 && t.curvature > 0.0) p = std::min(p, pole_radius(t.curvature) / t.scale);
  }
  return p;
}

double DriftSpec::positive_bound() const {
  double s = 0.0;
  for (const auto& t : terms) {
    if (t.curvature < 0.0) s += t.weight * 2.0 * std::sqrt(-t.curvature);
  }
  return s;
}

bool DriftSpec::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const DriftTerm& t) {
    return t.weight == 0.0 || t.curvature == 0.0;
  });
}

std::vector<DiameterConstraint> diameter_constraints(const CurvatureClass& cls) {
  std::vector<DiameterConstraint> out;
  std::visit(overloaded{[&](const Riemannian& c) {
                          if (c.k > 0.0) out.push_back({std::numbers::pi / std::sqrt(c.k), "π/√k"});
                        },
                        [&](const auto& c) {
                          // Orthogonal directions exist only for m >= 2.
                          if (c.k1 > 0.0) {
                            out.push_back({std::numbers::pi / (2.0 * std::sqrt(c.k1)), "π/(2√k₁)"});
                          }
                          if (c.m >= 2 && c.k2 > 0.0) {
                            out.push_back({std::numbers::pi / std::sqrt(c.k2), "π/√k₂"});
                          }
                        }},
             cls);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.bound < b.bound; });
  return out;
}

double max_diameter(const CurvatureClass& cls) {
  const auto cs = diameter_constraints(cls);
  return cs.empty() ? kInf : cs.front().bound;
}

void require_admissible_diameter(const CurvatureClass& cls, double D) {
  validate(cls);
  if (!(D > 0.0) || !std::isfinite(D)) {
    throw AdmissibilityError("diameter must be positive and finite, got " + format_number(D));
  }
  std::string violated;
  for (const auto& c : diameter_constraints(cls)) {
    if (!(D < c.bound * (1.0 - kPoleGuard))) {
      if (!violated.empty()) violated += ", ";
      violated += "D < " + c.label + " = " + format_number(c.bound);
    }
  }
  if (!violated.empty()) {
    throw AdmissibilityError("diameter " + format_number(D) + " violates " + violated +
                             " for " + describe(cls));
  }
}

double clip_diameter(const CurvatureClass& cls, double D) {
  const double bound = max_diameter(cls);
  if (!std::isfinite(bound)) return D;
  return std::min(D, bound * (1.0 - 1e-9));
}

DriftSpec drift_spec(const CurvatureClass& cls, double D) {
  require_admissible_diameter(cls, D);
  return DriftSpec{drift_terms(cls), D};
}

double drift_value(const DriftSpec& spec, double r) {
  if (!(r > 0.0) || !(r < spec.diameter)) {
    throw DomainError("drift evaluated outside (0, D): r=" + format_number(r));
  }
  return spec.value(r);
}

double index_upper_bound(const CurvatureClass& cls, double r) {
  validate(cls);
  return DriftSpec{drift_terms(cls), kInf}.value(r);
}

Riemannian classical_envelope(const CurvatureClass& cls) {
  return std::visit(
      overloaded{[](const Riemannian&) -> Riemannian {
                   throw InvalidClass("classical envelope needs a kahler or quaternion-kahler class");
                 },
                 [](const Kahler& c) {
                   const double w = 2.0 * c.m - 1.0;
                   return Riemannian{2 * c.m, (4.0 * c.k1 + (2.0 * c.m - 2.0) * c.k2) / w};
                 },
                 [](const QuaternionKahler& c) {
                   const double w = 4.0 * c.m - 1.0;
                   return Riemannian{4 * c.m, (12.0 * c.k1 + (4.0 * c.m - 4.0) * c.k2) / w};
                 }},
      cls);
}

}  // namespace specgap
