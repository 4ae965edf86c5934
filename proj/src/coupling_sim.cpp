#include "specgap/coupling_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "specgap/errors.hpp"

namespace specgap {
namespace {

constexpr double kNoiseVariance = 8.0;  // 2 d beta with <beta>_t = 2t
constexpr std::size_t kBlockPaths = 128;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Substream key for (seed, path, stream): 0 drives the noise, 1 the bridge test.
std::uint64_t substream(std::uint64_t seed, std::uint64_t path, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(path * 2 + stream + 0x632BE59BD9B4E019ULL));
}

// Running mean/variance (Welford), merged with Chan's update.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

struct BlockStats {
  std::vector<Moments> g;
  std::vector<long> coupled;
};

// Solves x - dt b(x) = y for x in (0, pole) with safeguarded Newton.
class ImplicitDrift {
 public:
  ImplicitDrift(const DriftSpec& drift, double dt)
      : drift_(drift), dt_(dt), zero_(drift.is_zero()), pole_(drift.pole()),
        positive_(drift.positive_bound()) {}

  double solve(double y) const {
    if (zero_) return y;
    double lo = 0.0;
    double hi = y + dt_ * positive_ + 1e-300;
    if (std::isfinite(pole_)) hi = std::min(hi, pole_ * (1.0 - 2e-12));
    // Explicit Euler predictor; falls back to the bracket midpoint.
    double x = y < hi ? y : 0.5 * (lo + hi);
    if (x == y) {
      const double guess = y + dt_ * drift_.value(y);
      if (guess > lo && guess < hi) x = guess;
    }
    for (int it = 0; it < 100; ++it) {
      const double f = x - dt_ * drift_.value(x) - y;
      if (std::abs(f) <= 1e-14 * std::max(1.0, y)) return x;
      if (f > 0.0) hi = x; else lo = x;
      const double df = 1.0 - dt_ * drift_.derivative(x);
      double next = x - f / df;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (hi - lo <= 1e-16 * hi) return next;
      x = next;
    }
    return x;
  }

 private:
  const DriftSpec& drift_;
  double dt_;
  bool zero_;
  double pole_;
  double positive_;
};

}  // namespace

void validate(const SimConfig& cfg, double D) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!std::isfinite(cfg.rho0) || !(cfg.rho0 > 0.0) || cfg.rho0 > D) fail("rho0 must lie in (0, D]");
  if (!std::isfinite(cfg.t_end) || !(cfg.t_end > 0.0)) fail("t_end must be positive");
  if (!std::isfinite(cfg.dt) || !(cfg.dt > 0.0)) fail("dt must be positive");
  if (cfg.dt > cfg.t_end / 100.0 * (1.0 + 1e-12)) fail("dt must not exceed t_end / 100");
  if (cfg.paths < 100) fail("paths must be >= 100");
  if (cfg.increments_per_step < 1) fail("increments_per_step must be >= 1");
}

std::vector<long> checkpoint_steps(const SimConfig& cfg) {
  const long total = std::max(1L, std::lround(cfg.t_end / cfg.dt));
  std::vector<long> steps(kCheckpoints);
  long prev = 0;
  for (int j = 0; j < kCheckpoints; ++j) {
    const double t = cfg.t_end * std::pow(100.0, double(j - (kCheckpoints - 1)) / (kCheckpoints - 1));
    steps[j] = std::max({std::lround(t / cfg.dt), prev + 1, 1L});
    prev = steps[j];
  }
  steps.back() = std::max(total, steps[kCheckpoints - 2] + 1);
  return steps;
}

SimResult simulate(const RadialOperator& op, const TrialFunction& g, const SimConfig& cfg) {
  const double D = op.diameter();
  validate(cfg, D);
  // The implicit step is well posed while 1 - dt b'(x) stays positive.
  double lipschitz = 0.0;
  for (const auto& t : op.drift.terms) {
    if (t.curvature < 0.0) lipschitz += t.weight * t.scale * -t.curvature;
  }
  if (cfg.dt * lipschitz >= 0.5) throw ConfigError("dt too large for the implicit drift step");

  const std::vector<long> steps = checkpoint_steps(cfg);
  const long total = steps.back();
  const std::size_t ncheck = steps.size();
  const std::size_t npaths = static_cast<std::size_t>(cfg.paths);
  const std::size_t nblocks = (npaths + kBlockPaths - 1) / kBlockPaths;
  const ImplicitDrift implicit(op.drift, cfg.dt);
  const double noise_scale = std::sqrt(kNoiseVariance * cfg.dt / cfg.increments_per_step);
  const double bridge_scale = 2.0 / (kNoiseVariance * cfg.dt);

  auto run_block = [&](std::size_t block) {
    BlockStats stats{std::vector<Moments>(ncheck), std::vector<long>(ncheck, 0)};
    const std::size_t first = block * kBlockPaths;
    const std::size_t last = std::min(npaths, first + kBlockPaths);
    for (std::size_t p = first; p < last; ++p) {
      std::mt19937_64 noise(substream(cfg.seed, p, 0));
      std::mt19937_64 bridge(substream(cfg.seed, p, 1));
      std::normal_distribution<double> normal;
      std::uniform_real_distribution<double> uniform;
      double rho = cfg.rho0;
      bool coupled = false;
      std::size_t next = 0;
      for (long step = 1; step <= total; ++step) {
        if (!coupled) {
          double dw = 0.0;
          for (int i = 0; i < cfg.increments_per_step; ++i) dw += normal(noise);
          const double y = rho + noise_scale * dw;
          double x = y > 0.0 ? implicit.solve(y) : 0.0;
          if (x > D) x = 2.0 * D - x;
          if (!(x > 0.0)) {
            coupled = true;
          } else if (uniform(bridge) < std::exp(-bridge_scale * rho * x)) {
            coupled = true;  // the continuous path touched 0 inside the step
          }
          rho = coupled ? 0.0 : x;
        }
        if (step == steps[next]) {
          stats.g[next].push(coupled ? 0.0 : g(rho));
          if (coupled) ++stats.coupled[next];
          if (++next == ncheck) break;
        }
      }
    }
    return stats;
  };

  std::vector<BlockStats> blocks(nblocks);
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, nblocks));
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t b; (b = cursor.fetch_add(1)) < nblocks;) blocks[b] = run_block(b);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SimResult out;
  for (std::size_t c = 0; c < ncheck; ++c) {
    Moments m;
    long coupled = 0;
    for (const auto& b : blocks) {
      m.merge(b.g[c]);
      coupled += b.coupled[c];
    }
    const double var = m.n > 1.0 ? m.m2 / (m.n - 1.0) : 0.0;
    out.times.push_back(static_cast<double>(steps[c]) * cfg.dt);
    out.mean_g.push_back(m.mean);
    out.std_error.push_back(std::sqrt(var / m.n));
    out.coupled_fraction.push_back(static_cast<double>(coupled) / m.n);
  }
  return out;
}

ContractionReport contraction_check(const RadialOperator& op, const TrialFunction& g,
                                    double delta, const SimConfig& cfg) {
  ContractionReport rep;
  rep.header =
      "dominating radial diffusion d rho = b dt + sqrt(8) dW; absorbed at 0, reflected at D "
      "(reflection only slows contraction, so the test stays conservative)";
  rep.delta = delta;
  rep.g_rho0 = g(cfg.rho0);
  rep.sim = simulate(op, g, cfg);
  for (std::size_t i = 0; i < rep.sim.times.size(); ++i) {
    ContractionRow row;
    row.t = rep.sim.times[i];
    row.mean_g = rep.sim.mean_g[i];
    row.std_error = rep.sim.std_error[i];
    row.bound = rep.g_rho0 * std::exp(-delta * row.t);
    row.margin = row.bound + 3.0 * row.std_error - row.mean_g;
    row.pass = row.margin >= 0.0;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

double decay_rate(const SimResult& sim) {
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < sim.times.size(); ++i) {
    if (!(sim.mean_g[i] > 0.0)) continue;
    const double t = sim.times[i], y = std::log(sim.mean_g[i]);
    n += 1;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double denom = n * stt - st * st;
  if (n < 2 || denom == 0.0) return 0.0;
  return -(n * sty - st * sy) / denom;
}

}  // namespace specgap
