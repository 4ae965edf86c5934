#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specgap/geometry.hpp"

namespace specgap {

/// The radial operator 4 d^2/dr^2 + b(r) d/dr on (0, D).
struct RadialOperator {
  static constexpr double diffusion = 4.0;
  DriftSpec drift;
  std::optional<CurvatureClass> source;  // class the drift came from, if any

  double diameter() const { return drift.diameter; }
  double apply(double g, double gp, double gpp, double r) const;
};

RadialOperator make_operator(const CurvatureClass& cls, double D);
RadialOperator make_operator(DriftSpec drift);

/// g and its first two derivatives at one radius.
struct Jet {
  double g = 0.0;
  double gp = 0.0;
  double gpp = 0.0;
};

/// Samples of a function and its derivatives on an increasing grid.
struct SampledFunction {
  std::vector<double> r;
  std::vector<double> g;
  std::vector<double> gp;
  std::vector<double> gpp;
};

/// Candidate function g with g(0) = 0 and g' > 0 on [0, D).
class TrialFunction {
 public:
  struct SineHalfPi {
    double diameter;  // g(r) = sin(pi r / (2 D))
  };
  struct SineScaled {
    double omega;  // g(r) = sin(omega r)
  };
  using Kind = std::variant<SineHalfPi, SineScaled, SampledFunction>;

  static TrialFunction sine_half_pi(double diameter);
  static TrialFunction sine_scaled(double omega);
  /// Quintic Hermite interpolation between samples; throws DomainError if the
  /// grid is not strictly increasing or the columns disagree in length.
  static TrialFunction sampled(SampledFunction samples);
  /// Samples an analytic jet on n + 1 uniform points of [0, D].
  static TrialFunction sample(const std::function<Jet(double)>& jet, double D, int n);

  Jet eval(double r) const;
  double operator()(double r) const { return eval(r).g; }
  std::string name() const;
  const Kind& kind() const { return kind_; }
  /// g''(0) != 0 makes the ratio blow up as r -> 0.
  bool curved_at_origin() const;

 private:
  explicit TrialFunction(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

enum class BoundMethod { trial, optimal };

std::string to_string(BoundMethod m);

struct BoundDiagnostics {
  int grid_n = 0;
  double residual = 0.0;    // optimal: relative eigen-residual on the fine grid
  bool monotone = true;     // g' > 0 on the evaluation grid
  double rich_error = 0.0;  // optimal: Richardson error estimate
  std::string note;
};

struct BoundResult {
  double delta = 0.0;  // lower bound for the first eigenvalue
  BoundMethod method = BoundMethod::trial;
  double witness_r = 0.0;
  std::optional<SampledFunction> eigenfunction;
  BoundDiagnostics diagnostics;
};

/// delta = -sup_{r in (0, D)} (L g)(r) / g(r) over a clipped uniform grid,
/// refined by golden-section search around the discrete maximizer.
BoundResult trial_bound(const RadialOperator& op, const TrialFunction& g, int grid_n);

/// Principal Dirichlet(0)/Neumann(D) eigenvalue of -(4 d^2 + b d) by a
/// symmetric finite-volume discretization, Richardson-extrapolated from
/// grid_n and grid_n / 2 cells.
BoundResult optimal_bound(const RadialOperator& op, int grid_n);

/// pi^2 / D^2.
double zhong_yang(double D);

}  // namespace specgap
