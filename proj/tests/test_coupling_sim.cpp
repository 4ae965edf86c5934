#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "specgap/coupling_sim.hpp"
#include "specgap/errors.hpp"
#include "specgap/solver.hpp"

using namespace specgap;

namespace {

constexpr double kPi = std::numbers::pi;

// Survival of rho0 + sqrt(8) W on [0, D], absorbed at 0 and reflected at D,
// from the Dirichlet-Neumann eigen-expansion of the constant function.
double zero_drift_survival(double rho0, double D, double t) {
  double sum = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double a = (k + 0.5) * kPi / D;
    sum += 2.0 / (a * D) * std::sin(a * rho0) * std::exp(-4.0 * a * a * t);
  }
  return sum;
}

// Half-line absorption probability without the reflecting wall.
double half_line_coupled(double rho0, double t) {
  return std::erfc(rho0 / std::sqrt(8.0 * t) / std::sqrt(2.0));
}

struct Case {
  const char* name;
  RadialOperator op;
  TrialFunction g;
  double delta;
  double t_end;
};

std::vector<Case> exactness_cases() {
  const double Ds = kPi * (1 - 1e-3);
  const double Dc = kPi / 2 * (1 - 1e-3);
  return {
      {"flat", make_operator(Riemannian{3, 0}, 1.0), TrialFunction::sine_half_pi(1.0), kPi * kPi, 0.1},
      {"sphere2", make_operator(Riemannian{2, 1}, Ds), TrialFunction::sine_scaled(0.5), 2.0, 0.3},
      {"cp1", make_operator(Kahler{1, 1, 0}, Dc), TrialFunction::sine_scaled(1.0), 8.0, 0.1},
  };
}

}  // namespace

TEST_CASE("validate rejects inconsistent configurations") {
  const SimConfig ok{0.5, 0.1, 1e-4, 1000, 1};
  CHECK_NOTHROW(validate(ok, 1.0));
  auto with = [&](auto edit) {
    SimConfig c = ok;
    edit(c);
    return c;
  };
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.rho0 = 1.5; }), 1.0), ConfigError);
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.rho0 = 0.0; }), 1.0), ConfigError);
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.dt = 2e-3; }), 1.0), ConfigError);
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.t_end = -1; }), 1.0), ConfigError);
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.paths = 99; }), 1.0), ConfigError);
  CHECK_THROWS_AS(validate(with([](SimConfig& c) { c.increments_per_step = 0; }), 1.0), ConfigError);
  CHECK_NOTHROW(validate(with([](SimConfig& c) { c.rho0 = 1.0; }), 1.0));
}

TEST_CASE("simulate refuses a step too coarse for the implicit drift") {
  const auto op = make_operator(Riemannian{3, -100}, 1.0);
  const SimConfig cfg{0.5, 1.0, 5e-3, 200, 1};
  CHECK_THROWS_AS(simulate(op, TrialFunction::sine_half_pi(1.0), cfg), ConfigError);
}

TEST_CASE("property: checkpoint steps are strictly increasing and end at t_end") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.01, 5.0), frac(1e-5, 1e-2);
  for (int i = 0; i < 300; ++i) {
    SimConfig cfg;
    cfg.t_end = t(rng);
    cfg.dt = cfg.t_end * frac(rng);
    const auto steps = checkpoint_steps(cfg);
    REQUIRE(steps.size() == kCheckpoints);
    CHECK(steps.front() >= 1);
    for (std::size_t j = 1; j < steps.size(); ++j) CHECK(steps[j] > steps[j - 1]);
    CHECK(steps.back() == std::lround(cfg.t_end / cfg.dt));
  }
}

TEST_CASE("zero-drift absorption matches the eigen-series law") {
  const auto op = make_operator(Riemannian{3, 0}, 1.0);
  const SimConfig cfg{0.5, 0.25, 1e-4, 10000, 2024};
  const auto sim = simulate(op, TrialFunction::sine_half_pi(1.0), cfg);
  REQUIRE(sim.times.size() == kCheckpoints);
  CHECK(sim.times.back() == doctest::Approx(0.25).epsilon(1e-12));
  for (std::size_t i = 0; i < sim.times.size(); i += 5) {
    const double p = 1.0 - zero_drift_survival(0.5, 1.0, sim.times[i]);
    const double se = std::sqrt(std::max(p * (1 - p), 1e-4) / cfg.paths);
    INFO("t=", sim.times[i], " oracle=", p, " sim=", sim.coupled_fraction[i]);
    CHECK(std::abs(sim.coupled_fraction[i] - p) <= 3 * se);
  }
  const double final_oracle = 1.0 - zero_drift_survival(0.5, 1.0, 0.25);
  CHECK(final_oracle == doctest::Approx(0.92365).epsilon(1e-4));
  // The wall at D only adds mass that can be absorbed.
  CHECK(sim.coupled_fraction.back() >= half_line_coupled(0.5, 0.25));
  CHECK(half_line_coupled(0.5, 0.25) == doctest::Approx(0.7237).epsilon(1e-4));
}

TEST_CASE("zero-drift mean of the exact eigenfunction decays at rate pi^2") {
  const auto op = make_operator(Riemannian{3, 0}, 1.0);
  const SimConfig cfg{0.5, 0.2, 1e-4, 10000, 77};
  const auto sim = simulate(op, TrialFunction::sine_half_pi(1.0), cfg);
  for (std::size_t i = 0; i < sim.times.size(); ++i) {
    const double exact = std::sin(kPi / 4) * std::exp(-kPi * kPi * sim.times[i]);
    INFO("t=", sim.times[i]);
    CHECK(std::abs(sim.mean_g[i] - exact) <= 3 * sim.std_error[i]);
  }
}

TEST_CASE("results are bit-identical across reruns and worker counts") {
  const auto op = make_operator(Kahler{2, 1, 1}, 1.4);
  const auto g = TrialFunction::sine_scaled(1.0);
  SimConfig cfg{0.7, 0.05, 1e-4, 1000, 99};
  cfg.workers = 1;
  const auto a = simulate(op, g, cfg);
  const auto b = simulate(op, g, cfg);
  cfg.workers = 4;
  const auto c = simulate(op, g, cfg);
  cfg.workers = 3;
  cfg.paths = 1000;
  const auto d = simulate(op, g, cfg);
  for (const auto* other : {&b, &c, &d}) {
    CHECK(other->times == a.times);
    CHECK(other->mean_g == a.mean_g);
    CHECK(other->std_error == a.std_error);
    CHECK(other->coupled_fraction == a.coupled_fraction);
  }
  cfg.seed = 100;
  CHECK(simulate(op, g, cfg).mean_g != a.mean_g);
}

TEST_CASE("coupled fraction is non-decreasing and the mean stays non-negative") {
  for (const auto& c : exactness_cases()) {
    const SimConfig cfg{c.op.diameter() / 2, c.t_end, 1e-4, 2000, 5};
    const auto sim = simulate(c.op, c.g, cfg);
    INFO(c.name);
    for (std::size_t i = 0; i < sim.times.size(); ++i) {
      CHECK(sim.mean_g[i] >= 0.0);
      CHECK(sim.coupled_fraction[i] >= 0.0);
      CHECK(sim.coupled_fraction[i] <= 1.0);
      if (i > 0) {
        CHECK(sim.times[i] > sim.times[i - 1]);
        CHECK(sim.coupled_fraction[i] >= sim.coupled_fraction[i - 1]);
      }
    }
  }
}

TEST_CASE("contraction_check examples") {
  const double D = 1.0;
  const auto flat = make_operator(Riemannian{3, 0}, D);
  const auto zy = TrialFunction::sine_half_pi(D);
  const auto rep = contraction_check(flat, zy, kPi * kPi, SimConfig{0.5, 0.1, 1e-4, 10000, 3});
  CHECK(rep.rows.size() == kCheckpoints);
  for (double t : {0.02, 0.05, 0.1}) {
    const auto it = std::min_element(rep.rows.begin(), rep.rows.end(),
                                     [&](auto& x, auto& y) { return std::abs(x.t - t) < std::abs(y.t - t); });
    CHECK(std::abs(it->t - t) < 0.1 * t);
    CHECK(it->pass);
  }
  CHECK(rep.pass);
  CHECK(rep.header.find("reflected at D") != std::string::npos);

  const auto cp2 = make_operator(Kahler{2, 1, 1}, kPi / 2 * (1 - 1e-9));
  const auto zero = contraction_check(cp2, TrialFunction::sine_scaled(1.0), 0.0, SimConfig{0.8, 0.1, 1e-4, 500, 4});
  CHECK(zero.pass);

  const double Ds = kPi * 0.999;
  const auto s2 = contraction_check(make_operator(Riemannian{2, 1}, Ds), TrialFunction::sine_scaled(0.5), 2.0,
                                    SimConfig{Ds / 2, 0.5, 1e-4, 10000, 6});
  CHECK(s2.pass);
}

TEST_CASE("contraction_check flags an overstated rate") {
  const auto flat = make_operator(Riemannian{3, 0}, 1.0);
  const auto rep = contraction_check(flat, TrialFunction::sine_half_pi(1.0), 2 * kPi * kPi,
                                     SimConfig{0.5, 0.1, 1e-4, 4000, 8});
  CHECK_FALSE(rep.pass);
  CHECK(rep.rows.back().margin < 0.0);
}

TEST_CASE("CP1 decay rate estimate reaches the exact rate") {
  const double D = kPi / 2 * 0.999;
  const auto op = make_operator(Kahler{1, 1, 0}, D);
  const auto sim = simulate(op, TrialFunction::sine_scaled(1.0), SimConfig{D / 2, 0.3, 1e-4, 10000, 12});
  CHECK(decay_rate(sim) >= 8.0 * (1 - 0.15));
}

TEST_CASE("property: supermartingale along the exactness cases") {
  for (const auto& c : exactness_cases()) {
    const SimConfig cfg{c.op.diameter() / 2, c.t_end, 1e-4, 4000, 21};
    const auto sim = simulate(c.op, c.g, cfg);
    const double g0 = c.g(cfg.rho0);
    INFO(c.name);
    for (std::size_t i = 0; i < sim.times.size(); ++i) {
      const double rel = sim.mean_g[i] > 0 ? sim.std_error[i] / sim.mean_g[i] : 0.0;
      CHECK(std::exp(c.delta * sim.times[i]) * sim.mean_g[i] <= g0 * (1 + 3 * rel));
    }
  }
}

TEST_CASE("property: four times the paths halves the standard error") {
  const auto op = make_operator(Riemannian{3, 0}, 1.0);
  const auto g = TrialFunction::sine_half_pi(1.0);
  const auto small = simulate(op, g, SimConfig{0.5, 0.05, 1e-4, 2500, 31});
  const auto large = simulate(op, g, SimConfig{0.5, 0.05, 1e-4, 10000, 32});
  for (std::size_t i = 0; i < small.times.size(); i += 4) {
    const double ratio = small.std_error[i] / large.std_error[i];
    INFO("t=", small.times[i]);
    CHECK(ratio >= 2.0 * 0.8);
    CHECK(ratio <= 2.0 * 1.2);
  }
}

TEST_CASE("property: halving dt moves the final mean by less than two standard errors") {
  for (const auto& c : exactness_cases()) {
    SimConfig coarse{c.op.diameter() / 2, c.t_end, 2e-4, 4000, 41};
    coarse.increments_per_step = 2;
    SimConfig fine = coarse;
    fine.dt = 1e-4;
    fine.increments_per_step = 1;
    const auto a = simulate(c.op, c.g, coarse);
    const auto b = simulate(c.op, c.g, fine);
    const double se = std::max(a.std_error.back(), b.std_error.back());
    INFO(c.name, " coarse=", a.mean_g.back(), " fine=", b.mean_g.back(), " se=", se);
    CHECK(std::abs(a.mean_g.back() - b.mean_g.back()) < 2 * se);
  }
}
