#include "specgap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "specgap/comparison.hpp"
#include "specgap/errors.hpp"
#include "specgap/geometry.hpp"
#include "specgap/solver.hpp"

namespace specgap {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> radii(double k, double pole_fraction) {
  const double rmax = std::min(5.0, 0.9 * pole_radius(k) * pole_fraction);
  std::vector<double> r;
  for (int i = 1; i <= 20; ++i) r.push_back(rmax * i / 20.0);
  return r;
}

const std::vector<double> kCurvatures = {-2.0, -1.0, -1e-6, 0.0, 1e-6, 1.0, 2.0};

VerifyRow energy_identity() {
  VerifyRow row{"energy identity |index_energy - G|", true, 0.0, 1e-8, ""};
  for (double k : kCurvatures) {
    for (double r : radii(k, 1.0)) row.worst = std::max(row.worst, std::abs(index_energy(k, r) - big_g(k, r)));
  }
  row.pass = row.worst <= row.tolerance;
  return row;
}

VerifyRow scaling_identity() {
  VerifyRow row{"scaling identity |G(4k,r) - 2G(k,2r)|", true, 0.0, 1e-12, ""};
  for (double k : kCurvatures) {
    for (double r : radii(k, 0.5)) {
      row.worst = std::max(row.worst, std::abs(big_g(4.0 * k, r) - 2.0 * big_g(k, 2.0 * r)));
    }
  }
  row.pass = row.worst <= row.tolerance;
  return row;
}

VerifyRow envelope_domination() {
  VerifyRow row{"envelope drift domination", true, 0.0, 1e-12, ""};
  int cases = 0;
  for (int family = 0; family < 2; ++family) {
    for (int m = 1; m <= 8; ++m) {
      for (double k1 = -2.0; k1 <= 2.0; k1 += 0.5) {
        for (double k2 = -2.0; k2 <= 2.0; k2 += 0.5) {
          const CurvatureClass cls = family == 0 ? CurvatureClass{Kahler{m, k1, k2}}
                                                 : CurvatureClass{QuaternionKahler{m, k1, k2}};
          const CurvatureClass env = classical_envelope(cls);
          const double dmax = std::min(max_diameter(cls), 6.0);
          for (int i = 1; i <= 8; ++i) {
            const double r = dmax * i / 9.0;
            const double excess = index_upper_bound(cls, r) - index_upper_bound(env, r);
            row.worst = std::max(row.worst, excess);
            ++cases;
          }
        }
      }
    }
  }
  row.pass = row.worst <= row.tolerance;
  row.detail = std::to_string(cases) + " samples; worst = max(refined - envelope)";
  return row;
}

VerifyRow exactness() {
  VerifyRow row{"closed-form exactness (Zhong-Yang, spheres, CP^1, HP^1)", true, 0.0, 1e-6, ""};
  std::ostringstream detail;
  auto check = [&](const std::string& name, const RadialOperator& op, const TrialFunction& g,
                   double expected) {
    const double d = trial_bound(op, g, 1024).delta;
    const double dev = std::abs(d - expected);
    row.worst = std::max(row.worst, dev);
    detail << name << "=" << d << " ";
  };
  check("zhong-yang", make_operator(Riemannian{3, 0.0}, 1.0), TrialFunction::sine_half_pi(1.0), kPi * kPi);
  for (int n = 2; n <= 8; ++n) {
    check("S^" + std::to_string(n), make_operator(Riemannian{n, 1.0}, kPi * (1 - 1e-6)),
          TrialFunction::sine_scaled(0.5), n);
  }
  check("CP^1", make_operator(Kahler{1, 1.0, 0.0}, kPi / 2 * (1 - 1e-6)), TrialFunction::sine_scaled(1.0), 8.0);
  check("HP^1", make_operator(QuaternionKahler{1, 1.0, 0.0}, kPi / 2 * (1 - 1e-6)),
        TrialFunction::sine_scaled(1.0), 16.0);
  row.pass = row.worst <= row.tolerance;
  row.detail = detail.str();
  return row;
}

VerifyRow optimal_exactness() {
  VerifyRow row{"optimal bound on exact cases (relative)", true, 0.0, 1e-6, ""};
  auto check = [&](const RadialOperator& op, double expected) {
    const double d = optimal_bound(op, 2048).delta;
    row.worst = std::max(row.worst, std::abs(d - expected) / expected);
  };
  check(make_operator(Riemannian{3, 0.0}, 1.0), kPi * kPi);
  for (int n = 2; n <= 8; ++n) check(make_operator(Riemannian{n, 1.0}, kPi * (1 - 1e-6)), n);
  check(make_operator(Kahler{1, 1.0, 0.0}, kPi / 2 * (1 - 1e-6)), 8.0);
  check(make_operator(QuaternionKahler{1, 1.0, 0.0}, kPi / 2 * (1 - 1e-6)), 16.0);
  row.pass = row.worst <= row.tolerance;
  return row;
}

VerifyRow admissibility() {
  VerifyRow row{"diameter admissibility errors", true, 0.0, 0.0, ""};
  auto expect = [&](const CurvatureClass& cls, double D, const std::string& label) {
    try {
      drift_spec(cls, D);
      row.pass = false;
      row.detail += "no error for " + describe(cls) + "; ";
    } catch (const AdmissibilityError& e) {
      if (std::string(e.what()).find(label) == std::string::npos) {
        row.pass = false;
        row.detail += std::string("message lacks ") + label + "; ";
      }
    }
  };
  expect(Kahler{2, 1.0, 1.0}, kPi / 2, "π/(2√k₁)");
  expect(Kahler{2, 0.0, 1.0}, kPi, "π/√k₂");
  expect(Riemannian{3, 1.0}, kPi, "π/√k");
  return row;
}

}  // namespace

std::vector<VerifyRow> run_identity_suite() {
  return {energy_identity(), scaling_identity(), envelope_domination(), exactness(),
          optimal_exactness(), admissibility()};
}

}  // namespace specgap
