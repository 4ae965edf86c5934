#include "specgap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specgap/errors.hpp"

namespace specgap {
namespace {

constexpr double kClip = 1e-6;  // ratio sampled on [D kClip, D (1 - kClip)]
constexpr double kTieTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Quintic Hermite interpolation on one cell, s in [0, 1].
Jet hermite5(const SampledFunction& f, std::size_t i, double r) {
  const double h = f.r[i + 1] - f.r[i];
  const double s = (r - f.r[i]) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;

  const double H[6] = {1 - 10 * s3 + 15 * s4 - 6 * s5,      s - 6 * s3 + 8 * s4 - 3 * s5,
                       0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5, 10 * s3 - 15 * s4 + 6 * s5,
                       -4 * s3 + 7 * s4 - 3 * s5,            0.5 * s3 - s4 + 0.5 * s5};
  const double dH[6] = {-30 * s2 + 60 * s3 - 30 * s4,  1 - 18 * s2 + 32 * s3 - 15 * s4,
                        s - 4.5 * s2 + 6 * s3 - 2.5 * s4, 30 * s2 - 60 * s3 + 30 * s4,
                        -12 * s2 + 28 * s3 - 15 * s4,  1.5 * s2 - 4 * s3 + 2.5 * s4};
  const double ddH[6] = {-60 * s + 180 * s2 - 120 * s3, -36 * s + 96 * s2 - 60 * s3,
                         1 - 9 * s + 18 * s2 - 10 * s3,  60 * s - 180 * s2 + 120 * s3,
                         -24 * s + 84 * s2 - 60 * s3,    3 * s - 12 * s2 + 10 * s3};
  const double c[6] = {f.g[i],          h * f.gp[i],     h * h * f.gpp[i],
                       f.g[i + 1],      h * f.gp[i + 1], h * h * f.gpp[i + 1]};
  Jet out;
  for (int j = 0; j < 6; ++j) {
    out.g += c[j] * H[j];
    out.gp += c[j] * dH[j];
    out.gpp += c[j] * ddH[j];
  }
  out.gp /= h;
  out.gpp /= h * h;
  return out;
}

double tie_tolerance(double v) { return kTieTol * std::max(1.0, std::abs(v)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double RadialOperator::apply([[maybe_unused]] double g, double gp, double gpp, double r) const {
  if (!(r > 0.0) || !(r < diameter())) {
    throw DomainError("operator applied outside (0, D) at r=" + fmt(r));
  }
  return diffusion * gpp + drift.value(r) * gp;
}

RadialOperator make_operator(const CurvatureClass& cls, double D) {
  return RadialOperator{drift_spec(cls, D), cls};
}

RadialOperator make_operator(DriftSpec drift) {
  if (!(drift.diameter > 0.0) || !(drift.diameter < drift.pole())) {
    throw AdmissibilityError("drift diameter must lie in (0, pole)");
  }
  return RadialOperator{std::move(drift), std::nullopt};
}

// ---------------------------------------------------------------------------
// Trial functions

TrialFunction TrialFunction::sine_half_pi(double diameter) {
  if (!(diameter > 0.0)) throw DomainError("sine-halfpi needs D > 0");
  return TrialFunction(SineHalfPi{diameter});
}

TrialFunction TrialFunction::sine_scaled(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("sine-scaled needs omega > 0");
  return TrialFunction(SineScaled{omega});
}

TrialFunction TrialFunction::sampled(SampledFunction s) {
  const std::size_t n = s.r.size();
  if (n < 2 || s.g.size() != n || s.gp.size() != n || s.gpp.size() != n) {
    throw DomainError("sampled trial needs >= 2 points and equal-length columns");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(s.r[i] > s.r[i - 1])) throw DomainError("sampled trial grid must be increasing");
  }
  return TrialFunction(std::move(s));
}

TrialFunction TrialFunction::sample(const std::function<Jet(double)>& jet, double D, int n) {
  if (n < 2 || !(D > 0.0)) throw DomainError("sample needs n >= 2 and D > 0");
  SampledFunction s;
  for (int i = 0; i <= n; ++i) {
    const double r = D * i / n;
    const Jet j = jet(r);
    s.r.push_back(r);
    s.g.push_back(j.g);
    s.gp.push_back(j.gp);
    s.gpp.push_back(j.gpp);
  }
  return sampled(std::move(s));
}

Jet TrialFunction::eval(double r) const {
  return std::visit(
      overloaded{[r](const SineHalfPi& t) {
                   const double w = std::numbers::pi / (2.0 * t.diameter);
                   return Jet{std::sin(w * r), w * std::cos(w * r), -w * w * std::sin(w * r)};
                 },
                 [r](const SineScaled& t) {
                   const double w = t.omega;
                   return Jet{std::sin(w * r), w * std::cos(w * r), -w * w * std::sin(w * r)};
                 },
                 [r](const SampledFunction& s) {
                   if (r < s.r.front() || r > s.r.back()) {
                     throw DomainError("sampled trial evaluated outside its grid at r=" + fmt(r));
                   }
                   auto it = std::upper_bound(s.r.begin(), s.r.end(), r);
                   std::size_t i = static_cast<std::size_t>(it - s.r.begin());
                   i = std::clamp<std::size_t>(i, 1, s.r.size() - 1) - 1;
                   return hermite5(s, i, r);
                 }},
      kind_);
}

std::string TrialFunction::name() const {
  return std::visit(overloaded{[](const SineHalfPi&) { return std::string("sine-halfpi"); },
                               [](const SineScaled& t) { return "sine-scaled(" + fmt(t.omega) + ")"; },
                               [](const SampledFunction&) { return std::string("sampled"); }},
                    kind_);
}

bool TrialFunction::curved_at_origin() const {
  if (const auto* s = std::get_if<SampledFunction>(&kind_)) {
    return std::abs(s->gpp.front()) > 1e-12 * std::max(1.0, std::abs(s->gp.front()));
  }
  return false;
}

std::string to_string(BoundMethod m) { return m == BoundMethod::trial ? "trial" : "optimal"; }

// ---------------------------------------------------------------------------
// Trial bound

BoundResult trial_bound(const RadialOperator& op, const TrialFunction& g, int grid_n) {
  if (grid_n < 64) throw DomainError("trial_bound needs grid_n >= 64");
  const double D = op.diameter();
  const double lo = D * kClip;
  const double hi = D * (1.0 - kClip);

  // g' > 0 on [0, D): origin, the evaluation grid and, for samples, every node.
  auto require_monotone = [&](double r) {
    const double gp = g.eval(r).gp;
    if (!(gp > 0.0)) {
      throw MonotonicityError("trial " + g.name() + " has g'(" + fmt(r) + ") = " + fmt(gp) +
                              " <= 0");
    }
  };
  require_monotone(0.0);
  if (const auto* s = std::get_if<SampledFunction>(&g.kind())) {
    for (std::size_t i = 0; i < s->r.size() && s->r[i] < D; ++i) {
      if (!(s->gp[i] > 0.0)) require_monotone(s->r[i]);
    }
  }

  auto ratio = [&](double r) {
    const Jet j = g.eval(r);
    const double q = op.apply(j.g, j.gp, j.gpp, r) / j.g;
    if (!std::isfinite(q) || !(j.g > 0.0)) {
      throw NonFiniteRatio("ratio L g / g is not finite at r=" + fmt(r) + " (g=" + fmt(j.g) + ")");
    }
    return q;
  };

  std::vector<double> grid(static_cast<std::size_t>(grid_n) + 1);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / grid_n;
    require_monotone(grid[i]);
    values[i] = ratio(grid[i]);
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::size_t arg = 0;
  while (values[arg] < best - tie_tolerance(best)) ++arg;

  // Golden-section refinement on the bracketing cells.
  double a = grid[arg == 0 ? 0 : arg - 1];
  double b = grid[std::min(arg + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = ratio(x1), f2 = ratio(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-14 * D; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = ratio(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = ratio(x1);
    }
  }
  const double refined_r = f1 >= f2 ? x1 : x2;
  const double refined = std::max(f1, f2);

  BoundResult out;
  out.method = BoundMethod::trial;
  out.delta = -std::max(best, refined);
  out.witness_r = refined > best + tie_tolerance(best) ? refined_r : grid[arg];
  out.diagnostics.grid_n = grid_n;
  out.diagnostics.monotone = true;
  if (g.curved_at_origin()) {
    out.diagnostics.note = "g''(0) != 0: sup taken over the clipped grid starting at r=" + fmt(lo);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Optimal bound

namespace {

struct Discrete {
  double delta = 0.0;
  double bisection = 0.0;
  double residual = 0.0;
  std::vector<double> g;  // nodes 0..N, g[0] = 0
};

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double o2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : o2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

// Solves the tridiagonal system (sub = super = off) in place.
void thomas(const std::vector<double>& diag, const std::vector<double>& off, std::vector<double>& x) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n);
  c[0] = n > 1 ? off[0] / diag[0] : 0.0;
  d[0] = x[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - off[i - 1] * c[i - 1];
    c[i] = i + 1 < n ? off[i] / m : 0.0;
    d[i] = (x[i] - off[i - 1] * d[i - 1]) / m;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
}

Discrete solve_discrete(const DriftSpec& drift, int n) {
  const double D = drift.diameter;
  const double h = D / n;
  const std::size_t N = static_cast<std::size_t>(n);

  // Log-weights at edge midpoints and at 2-point Gauss nodes of each half cell.
  const double gq = 0.5 / std::sqrt(3.0);
  std::vector<double> log_edge(N), log_left(2 * N), log_right(2 * N);
  double log_max = -std::numeric_limits<double>::infinity();
  try {
    for (std::size_t i = 0; i < N; ++i) {
      log_edge[i] = drift.log_weight((i + 0.5) * h);
      // Node i+1: left half cell [r - h/2, r], right half cell [r, r + h/2].
      const double r = (i + 1) * h;
      log_left[2 * i] = drift.log_weight(r - h * (0.25 + 0.5 * gq));
      log_left[2 * i + 1] = drift.log_weight(r - h * (0.25 - 0.5 * gq));
      if (i + 1 < N) {
        log_right[2 * i] = drift.log_weight(r + h * (0.25 - 0.5 * gq));
        log_right[2 * i + 1] = drift.log_weight(r + h * (0.25 + 0.5 * gq));
      }
      log_max = std::max({log_max, log_edge[i], log_left[2 * i], log_left[2 * i + 1]});
    }
  } catch (const DomainError& e) {
    throw SingularDrift(std::string("weight quadrature failed near D: ") + e.what());
  }
  if (!std::isfinite(log_max)) throw SingularDrift("weight is not finite on (0, D)");

  std::vector<double> a(N), m(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    a[i] = RadialOperator::diffusion * std::exp(log_edge[i] - log_max) / h;
    m[i] = 0.25 * h * (std::exp(log_left[2 * i] - log_max) + std::exp(log_left[2 * i + 1] - log_max));
    if (i + 1 < N) {
      m[i] += 0.25 * h *
              (std::exp(log_right[2 * i] - log_max) + std::exp(log_right[2 * i + 1] - log_max));
    }
    if (!(a[i] > 0.0) || !(m[i] > 0.0) || !std::isfinite(a[i]) || !std::isfinite(m[i])) {
      throw SingularDrift("weight underflows at r=" + fmt((i + 1) * h));
    }
  }

  // Stiffness K over unknowns g_1..g_N: diag a_{j-1} + a_j, off -a_j.
  std::vector<double> kd(N), ko(N > 0 ? N - 1 : 0);
  for (std::size_t j = 0; j < N; ++j) {
    kd[j] = a[j] + (j + 1 < N ? a[j + 1] : 0.0);
    if (j + 1 < N) ko[j] = -a[j + 1];
  }
  // T = M^{-1/2} K M^{-1/2}.
  std::vector<double> td(N), to(ko.size());
  double gersh = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    td[j] = kd[j] / m[j];
    if (j + 1 < N) to[j] = ko[j] / std::sqrt(m[j] * m[j + 1]);
  }
  for (std::size_t j = 0; j < N; ++j) {
    const double radius = (j > 0 ? std::abs(to[j - 1]) : 0.0) + (j + 1 < N ? std::abs(to[j]) : 0.0);
    gersh = std::max(gersh, td[j] + radius);
  }

  double lo = 0.0, hi = gersh;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(td, to, mid) >= 1) hi = mid; else lo = mid;
  }
  const double lambda_bis = 0.5 * (lo + hi);

  // Inverse iteration on (K - sigma M) g = M g_prev.
  const double sigma = lambda_bis * (1.0 - 1e-4);
  std::vector<double> sd(N);
  for (std::size_t j = 0; j < N; ++j) sd[j] = kd[j] - sigma * m[j];
  std::vector<double> g(N);
  for (std::size_t j = 0; j < N; ++j) g[j] = static_cast<double>(j + 1) / N;
  for (int it = 0; it < 12; ++it) {
    std::vector<double> rhs(N);
    for (std::size_t j = 0; j < N; ++j) rhs[j] = m[j] * g[j];
    thomas(sd, ko, rhs);
    const double scale = *std::max_element(rhs.begin(), rhs.end(), [](double x, double y) {
      return std::abs(x) < std::abs(y);
    });
    double change = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double v = rhs[j] / scale;
      change = std::max(change, std::abs(v - g[j]));
      g[j] = v;
    }
    if (change < 1e-15) break;
  }

  // Rayleigh quotient in difference form: every term is non-negative.
  double num = 0.0, den = 0.0, prev = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double diff = g[j] - prev;
    num += a[j] * diff * diff;
    den += m[j] * g[j] * g[j];
    prev = g[j];
  }
  Discrete out;
  out.delta = num / den;
  out.bisection = lambda_bis;

  double rnorm = 0.0, bnorm = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double kg = kd[j] * g[j];
    if (j > 0) kg += ko[j - 1] * g[j - 1];
    if (j + 1 < N) kg += ko[j] * g[j + 1];
    const double mg = out.delta * m[j] * g[j];
    rnorm += (kg - mg) * (kg - mg);
    bnorm += mg * mg;
  }
  out.residual = std::sqrt(rnorm / bnorm);
  out.g.assign(1, 0.0);
  out.g.insert(out.g.end(), g.begin(), g.end());
  return out;
}

}  // namespace

BoundResult optimal_bound(const RadialOperator& op, int grid_n) {
  if (grid_n < 128 || grid_n > 16384) throw DomainError("optimal_bound needs grid_n in [128, 16384]");
  const Discrete fine = solve_discrete(op.drift, grid_n);
  const Discrete coarse = solve_discrete(op.drift, grid_n / 2);

  BoundResult out;
  out.method = BoundMethod::optimal;
  out.delta = fine.delta + (fine.delta - coarse.delta) / 3.0;
  out.diagnostics.grid_n = grid_n;
  out.diagnostics.rich_error = std::abs(fine.delta - coarse.delta) / 3.0;
  out.diagnostics.residual = fine.residual;

  const double h = op.diameter() / grid_n;
  SampledFunction ef;
  ef.r.resize(fine.g.size());
  ef.g = fine.g;
  bool monotone = true;
  for (std::size_t i = 0; i < fine.g.size(); ++i) {
    ef.r[i] = h * static_cast<double>(i);
    if (i > 0 && !(fine.g[i] > fine.g[i - 1])) monotone = false;
  }
  out.eigenfunction = std::move(ef);
  out.diagnostics.monotone = monotone;
  // The ratio is constant for the eigenfunction; report the first interior node.
  out.witness_r = h;
  if (!monotone) {
    out.diagnostics.note = "NonMonotoneEigenfunction: discrete g' <= 0 somewhere; bound not certified";
  }
  return out;
}

double zhong_yang(double D) {
  if (!(D > 0.0)) throw DomainError("zhong_yang needs D > 0");
  return std::numbers::pi * std::numbers::pi / (D * D);
}

}  // namespace specgap
