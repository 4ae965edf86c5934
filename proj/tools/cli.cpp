#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "specgap/catalog.hpp"
#include "specgap/coupling_sim.hpp"
#include "specgap/errors.hpp"
#include "specgap/io.hpp"
#include "specgap/solver.hpp"
#include "specgap/verify.hpp"

namespace specgap::cli {
namespace {

struct ClassOptions {
  std::map<std::string, std::string> keys;
  double diameter = 0.0;
  bool clip = false;

  void attach(CLI::App* sub) {
    sub->add_option("--family", keys["family"], "riemannian | kahler | quaternion-kahler")
        ->required()
        ->check(CLI::IsMember({"riemannian", "kahler", "quaternion-kahler"}));
    sub->add_option("--n", keys["n"], "real dimension (riemannian)");
    sub->add_option("--m", keys["m"], "complex / quaternionic dimension");
    sub->add_option("--k", keys["k"], "Ric >= (n-1) k (riemannian)");
    sub->add_option("--k1", keys["k1"], "H >= 4 k1 or Q >= 12 k1");
    sub->add_option("--k2", keys["k2"], "orthogonal Ricci bound parameter");
    sub->add_option("--diameter", diameter, "diameter D")->required();
    sub->add_flag("--clip-diameter", clip, "shrink D by 1e-9 (relative) when it reaches the bound");
  }

  CurvatureClass curvature_class() const {
    std::map<std::string, std::string> given;
    for (const auto& [k, v] : keys) {
      if (!v.empty()) given[k] = v;
    }
    return class_from_keys(given);
  }

  double effective_diameter(const CurvatureClass& cls) const {
    return clip ? clip_diameter(cls, diameter) : diameter;
  }
};

struct TrialOptions {
  std::string kind = "sine-halfpi";
  double omega = 0.0;

  void attach(CLI::App* sub) {
    sub->add_option("--trial", kind, "trial function: sine-halfpi | sine-scaled")
        ->check(CLI::IsMember({"sine-halfpi", "sine-scaled"}))
        ->capture_default_str();
    sub->add_option("--omega", omega, "frequency for sine-scaled, g(r) = sin(omega r)");
  }

  TrialFunction make(double D) const {
    if (kind == "sine-scaled") {
      if (!(omega > 0.0)) throw DomainError("--trial sine-scaled needs --omega > 0");
      return TrialFunction::sine_scaled(omega);
    }
    return TrialFunction::sine_half_pi(D);
  }
};

int run_bound(const ClassOptions& co, const TrialOptions& to, const std::string& method, int grid,
              std::ostream& out, std::ostream& err) {
  const CurvatureClass cls = co.curvature_class();
  const double D = co.effective_diameter(cls);
  const RadialOperator op = make_operator(cls, D);

  json result;
  if (method == "trial" || method == "both") {
    const TrialFunction g = to.make(D);
    json j = to_json(trial_bound(op, g, grid), &cls, D);
    j["trial"] = g.name();
    result = method == "both" ? json{{"trial", j}} : j;
  }
  if (method == "optimal" || method == "both") {
    const BoundResult opt = optimal_bound(op, grid);
    if (!opt.diagnostics.monotone) err << "warning: " << opt.diagnostics.note << '\n';
    const json j = to_json(opt, &cls, D);
    if (method == "both") result["optimal"] = j; else result = j;
  }
  out << result.dump(2) << '\n';
  return kExitOk;
}

int run_sweep(const ClassOptions& co, const TrialOptions& to, int grid, const std::string& fmt,
              std::ostream& out) {
  const CurvatureClass cls = co.curvature_class();
  const double D = co.effective_diameter(cls);
  const RadialOperator op = make_operator(cls, D);
  const TrialFunction g = to.make(D);
  const double lo = D * 1e-6, hi = D * (1.0 - 1e-6);

  json rows = json::array();
  std::string csv = "r,drift,ratio\n";
  for (int i = 0; i <= grid; ++i) {
    const double r = lo + (hi - lo) * i / grid;
    const Jet j = g.eval(r);
    const double drift = op.drift.value(r);
    const double ratio = op.apply(j.g, j.gp, j.gpp, r) / j.g;
    csv += format_sig9(r) + ',' + format_sig9(drift) + ',' + format_sig9(ratio) + '\n';
    rows.push_back({{"r", r}, {"drift", drift}, {"ratio", ratio}});
  }
  if (fmt == "csv") out << csv; else out << rows.dump(2) << '\n';
  return kExitOk;
}

struct SimOptions {
  std::optional<double> rho0;
  double t_end = 0.5;
  double dt = 1e-4;
  int paths = 10000;
  std::uint64_t seed = 0;
  std::optional<double> delta;
  unsigned workers = 0;
};

int run_simulate(const ClassOptions& co, const TrialOptions& to, const SimOptions& so, int grid,
                 const std::string& fmt, std::ostream& out, std::ostream& err) {
  const CurvatureClass cls = co.curvature_class();
  const double D = co.effective_diameter(cls);
  const RadialOperator op = make_operator(cls, D);
  const TrialFunction g = to.make(D);
  SimConfig cfg{so.rho0.value_or(0.5 * D), so.t_end, so.dt, so.paths, so.seed, 1, so.workers};
  validate(cfg, D);
  const double delta = so.delta ? *so.delta : trial_bound(op, g, grid).delta;

  const ContractionReport rep = contraction_check(op, g, delta, cfg);
  if (fmt == "csv") {
    out << to_csv(rep.sim);
    const auto passed = std::count_if(rep.rows.begin(), rep.rows.end(), [](auto& r) { return r.pass; });
    err << "contraction " << (rep.pass ? "pass" : "FAIL") << ": " << passed << "/" << rep.rows.size()
        << " checkpoints, delta=" << delta << '\n';
  } else {
    out << json{{"sim", to_json(rep.sim)}, {"report", to_json(rep)}}.dump(2) << '\n';
  }
  return kExitOk;
}

int run_catalog(bool check, int grid, int max_m, std::ostream& out) {
  const auto models = builtin_models(max_m);
  if (!check) {
    json j = json::array();
    for (const auto& m : models) j.push_back(to_json(m));
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  json j = json::array();
  bool ok = true;
  for (const auto& m : models) {
    if (!m.compact() || !m.lambda1) continue;
    const ConsistencyReport rep = check_consistency(m, grid);
    ok = ok && rep.pass();
    j.push_back(to_json(rep));
  }
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int run_verify(std::ostream& out) {
  bool ok = true;
  out << "check | worst | tolerance | result\n";
  for (const auto& row : run_identity_suite()) {
    ok = ok && row.pass;
    out << row.name << " | " << format_sig9(row.worst) << " | " << format_sig9(row.tolerance) << " | "
        << (row.pass ? "pass" : "FAIL");
    if (!row.detail.empty()) out << " | " << row.detail;
    out << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-eigenvalue lower bounds from curvature and diameter", "specgap"};
  app.require_subcommand(1);

  ClassOptions bound_cls, sweep_cls, sim_cls;
  TrialOptions bound_trial, sweep_trial, sim_trial;
  std::string method = "both";
  std::string fmt = "json";
  std::string sweep_fmt = "csv";
  int bound_grid = 2048, sweep_grid = 256, sim_grid = 1024, catalog_grid = 2048, max_m = 3;
  bool catalog_check = false;
  SimOptions sim;

  auto* bound = app.add_subcommand("bound", "lower bound for one curvature class");
  bound_cls.attach(bound);
  bound_trial.attach(bound);
  bound->add_option("--method", method, "trial | optimal | both")
      ->check(CLI::IsMember({"trial", "optimal", "both"}))
      ->capture_default_str();
  bound->add_option("--grid", bound_grid, "grid cells")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "drift and L g / g over the radial grid");
  sweep_cls.attach(sweep);
  sweep_trial.attach(sweep);
  sweep->add_option("--grid", sweep_grid, "grid cells")->capture_default_str();
  sweep->add_option("--out", sweep_fmt, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo contraction check");
  sim_cls.attach(simulate_cmd);
  sim_trial.attach(simulate_cmd);
  simulate_cmd->add_option("--rho0", sim.rho0, "initial distance (default D/2)");
  simulate_cmd->add_option("--t-end", sim.t_end, "final time")->capture_default_str();
  simulate_cmd->add_option("--dt", sim.dt, "time step")->capture_default_str();
  simulate_cmd->add_option("--paths", sim.paths, "number of paths")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "64-bit seed")->capture_default_str();
  simulate_cmd->add_option("--delta", sim.delta, "contraction rate (default: trial bound)");
  simulate_cmd->add_option("--grid", sim_grid, "grid for the default trial bound")->capture_default_str();
  simulate_cmd->add_option("--workers", sim.workers, "threads (0 = hardware)")->capture_default_str();
  simulate_cmd->add_option("--out", fmt, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* catalog = app.add_subcommand("catalog", "model-space registry and consistency checks");
  catalog->add_flag("--check", catalog_check, "run consistency checks on compact models");
  catalog->add_option("--grid", catalog_grid, "grid cells for the checks")->capture_default_str();
  catalog->add_option("--max-m", max_m, "largest dimension m listed")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "identity and exactness suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*bound) return run_bound(bound_cls, bound_trial, method, bound_grid, out, err);
    if (*sweep) return run_sweep(sweep_cls, sweep_trial, sweep_grid, sweep_fmt, out);
    if (*simulate_cmd) return run_simulate(sim_cls, sim_trial, sim, sim_grid, fmt, out, err);
    if (*catalog) return run_catalog(catalog_check, catalog_grid, max_m, out);
    if (*verify) return run_verify(out);
  } catch (const ConsistencyFailure& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const NonFiniteRatio& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const SingularDrift& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace specgap::cli
