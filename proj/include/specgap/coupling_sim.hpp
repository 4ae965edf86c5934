#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specgap/solver.hpp"

namespace specgap {

struct SimConfig {
  double rho0 = 0.5;
  double t_end = 0.1;
  double dt = 1e-4;
  int paths = 10000;
  std::uint64_t seed = 0;
  /// Standard normals summed into each Brownian increment. Running dt with 2
  /// and dt/2 with 1 drives both step sizes by the same Brownian path.
  int increments_per_step = 1;
  /// 0 picks std::thread::hardware_concurrency(). Never affects results.
  unsigned workers = 0;
};

/// Statistics of g(rho_t) at the checkpoint times.
struct SimResult {
  std::vector<double> times;
  std::vector<double> mean_g;
  std::vector<double> std_error;
  std::vector<double> coupled_fraction;
};

inline constexpr int kCheckpoints = 32;

/// Throws ConfigError when cfg is inconsistent with itself or with D.
void validate(const SimConfig& cfg, double D);

/// Step indices (1-based, strictly increasing, last = total steps) of the
/// geometrically spaced checkpoints between t_end/100 and t_end.
std::vector<long> checkpoint_steps(const SimConfig& cfg);

/// Simulates the dominating distance process
///   d rho = b(rho) dt + sqrt(8) dW
/// absorbed at 0 (coupling) and reflected at D. The drift is integrated
/// implicitly, the noise explicitly, and crossings of 0 between grid times
/// are detected with the Brownian-bridge probability. Each path draws from
/// its own generator derived from (seed, path index), so results are
/// bit-identical for any worker count.
SimResult simulate(const RadialOperator& op, const TrialFunction& g, const SimConfig& cfg);

struct ContractionRow {
  double t = 0.0;
  double mean_g = 0.0;
  double bound = 0.0;  // g(rho0) e^{-delta t}
  double std_error = 0.0;
  double margin = 0.0;  // bound + 3 stderr - mean_g
  bool pass = true;
};

struct ContractionReport {
  std::string header;
  double delta = 0.0;
  double g_rho0 = 0.0;
  std::vector<ContractionRow> rows;
  bool pass = true;
  SimResult sim;
};

/// Checks E[g(rho_t)] <= g(rho0) e^{-delta t} + 3 stderr at every checkpoint.
ContractionReport contraction_check(const RadialOperator& op, const TrialFunction& g,
                                    double delta, const SimConfig& cfg);

/// Least-squares slope of -log mean_g(t) over checkpoints with mean_g > 0.
double decay_rate(const SimResult& sim);

}  // namespace specgap
