#include "switchkit/cli.hpp"

#include "switchkit/bounds.hpp"
#include "switchkit/csv.hpp"
#include "switchkit/errors.hpp"
#include "switchkit/experiment.hpp"
#include "switchkit/lorenz.hpp"
#include "switchkit/pendulum.hpp"
#include "switchkit/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

namespace switchkit {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

json checks_to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

int report(const std::vector<Check>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

std::string num(double v) { return format_double(v); }

fs::path output_dir(const std::string& flag) {
  const char* env = std::getenv("SWITCHKIT_OUT");
  fs::path dir = (env != nullptr && *env != '\0') ? fs::path(env) : fs::path(flag);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

// Event tolerance follows the step so that --step alone stays valid.
IntegratorConfig integrator_for(double step, double t_end) {
  IntegratorConfig cfg;
  cfg.step_size = step;
  cfg.event_tolerance = std::min(1e-6, 0.1 * step);
  cfg.t_end = t_end;
  cfg.validate();
  return cfg;
}

json integrator_json(const IntegratorConfig& cfg) {
  return {{"step_size", cfg.step_size}, {"event_tolerance", cfg.event_tolerance},
          {"t_end", cfg.t_end}};
}

void write_switches_csv(const fs::path& path, const SwitchLog& log) {
  CsvWriter w(path.string(), {"t", "from", "to"});
  for (const auto& e : log.events) {
    w.row(std::vector<double>{e.time, static_cast<double>(e.from_interval),
                              static_cast<double>(e.to_interval)});
  }
}

void write_bounds_csv(const fs::path& path, const BoundReport& report) {
  CsvWriter w(path.string(), {"t", "norm_y", "bound", "margin"});
  for (const auto& s : report.samples) w.row(std::vector<double>{s.t, s.output_norm, s.bound, s.margin});
}

// ---------------------------------------------------------------- pendulum

struct PendulumFlags {
  double step = 1e-3;
  double tend = 20.0;
  double dwell = 0.01;
  double omega = 1.0;
};

void write_pendulum_csv(const fs::path& path, const PendulumRun& run) {
  CsvWriter w(path.string(), {"t", "x1", "x2", "z1", "z2", "e1", "e2", "norm_e", "mode"});
  const Trajectory& traj = run.result.trajectory;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Vector& s = traj.states[k];
    w.row(std::vector<double>{traj.times[k], s(0), s(1), s(2), s(3), traj.outputs[k](0),
                              traj.outputs[k](1), traj.output_norms[k],
                              static_cast<double>(traj.modes[k])});
  }
}

int cmd_pendulum(const PendulumFlags& flags, const std::string& out_flag, unsigned seed) {
  PendulumObserverSetup setup;
  setup.omega = flags.omega;
  setup.dwell = flags.dwell;
  const IntegratorConfig cfg = integrator_for(flags.step, flags.tend);
  const fs::path dir = output_dir(out_flag);

  std::vector<PendulumRun> runs;
  for (const int m : {kSlow, kMedian, kFast}) runs.push_back(run_pendulum_observer(setup, m, cfg));
  runs.push_back(run_pendulum_observer(setup, std::nullopt, cfg));

  json summary;
  for (const auto& run : runs) {
    write_pendulum_csv(dir / (run.name + ".csv"), run);
    summary["runs"][run.name] = {
        {"peak_abs_e2", run.peak_e2},
        {"time_to_norm_e_0.1", std::isfinite(run.time_to_level) ? json(run.time_to_level) : json(nullptr)},
        {"switches", run.switches}};
    std::printf("%-7s peak|e2| = %-10.4f t(|e|<=0.1) = %-8.3f switches = %zu\n", run.name.c_str(),
                run.peak_e2, run.time_to_level, run.switches);
  }
  const PendulumRun& slow = runs[kSlow];
  const PendulumRun& fast = runs[kFast];
  const PendulumRun& hybrid = runs.back();
  const BoundReport bound =
      theorem1_monitor(hybrid.result.trajectory, pendulum_disturbance(setup), pendulum_betas(setup),
                       pendulum_gamma(setup), pendulum_config(setup), GeneralizedNormParams{});
  write_bounds_csv(dir / "hybrid_bounds.csv", bound);

  std::vector<Check> checks{
      {"hybrid switches", hybrid.switches >= 1, std::to_string(hybrid.switches) + " >= 1"},
      {"peak |e2| hybrid <= 0.7 fast", hybrid.peak_e2 <= 0.7 * fast.peak_e2,
       num(hybrid.peak_e2) + " vs " + num(0.7 * fast.peak_e2)},
      {"time to |e|<=0.1 hybrid <= 0.7 slow", hybrid.time_to_level <= 0.7 * slow.time_to_level,
       num(hybrid.time_to_level) + " vs " + num(0.7 * slow.time_to_level)},
      {"dwell-supervisor bound margin >= 0", bound.worst_margin >= 0.0, num(bound.worst_margin)}};
  summary["checks"] = checks_to_json(checks);
  summary["metadata"] = {{"omega", setup.omega},
                         {"dwell", setup.dwell},
                         {"partition", setup.partition},
                         {"chi", setup.chi},
                         {"mode_assignment", setup.mode_assignment},
                         {"x0", setup.x0},
                         {"z0", setup.z0},
                         {"integrator", integrator_json(cfg)},
                         {"seed", seed}};
  write_json(dir / "pendulum_summary.json", summary);
  return report(checks);
}

// ------------------------------------------------------------ lorenz table

struct LorenzFlags {
  std::string disturbed = "off";
  double step = 1e-3;
  double tend = 30.0;
  double chi_factor = 0.8;
  int jobs = 1;
};

std::vector<Check> lorenz_checks(const std::vector<LorenzCell>& cells, bool disturbed) {
  const auto cell = [&](LorenzStrategy s, LorenzInitial ic) -> const LorenzCell& {
    for (const auto& c : cells) {
      if (c.strategy == s && c.initial == ic) return c;
    }
    throw std::logic_error("missing table cell");
  };
  using S = LorenzStrategy;
  using I = LorenzInitial;
  std::vector<Check> checks;
  for (const auto ic : {I::small, I::large}) {
    const std::string tag = std::string(to_string(ic));
    const double je = cell(S::none, ic).perf.j_e;
    checks.push_back({"no-control J_e >= 100 (" + tag + ")", je >= 100.0, num(je)});
  }
  const auto& sup = cell(S::supervisor, I::large).perf;
  const auto& cancel = cell(S::cancel, I::large).perf;
  const auto& linear = cell(S::linear, I::large).perf;
  if (!disturbed) {
    for (const auto ic : {I::small, I::large}) {
      const std::string tag = std::string(to_string(ic));
      const double ju = cell(S::none, ic).perf.j_u;
      checks.push_back({"no-control J_u == 0 (" + tag + ")", ju == 0.0, num(ju)});
      for (const auto s : {S::cancel, S::linear}) {
        const double ja = cell(s, ic).perf.j_a;
        checks.push_back({std::string(to_string(s)) + " J_a <= 1e-6 (" + tag + ")", ja <= 1e-6, num(ja)});
      }
    }
    checks.push_back({"supervisor J_u <= 0.05 cancel J_u (large)", sup.j_u <= 0.05 * cancel.j_u,
                      num(sup.j_u) + " vs " + num(0.05 * cancel.j_u)});
  } else {
    const double cap = 0.25 * std::min(cancel.j_u, linear.j_u);
    checks.push_back({"supervisor J_u <= 0.25 min(cancel, linear) J_u (large)", sup.j_u <= cap,
                      num(sup.j_u) + " vs " + num(cap)});
    for (const auto ic : {I::small, I::large}) {
      const double s = cell(S::supervisor, ic).perf.j_a;
      const double l = cell(S::linear, ic).perf.j_a;
      const bool ok = s <= 3.0 * l && l <= 3.0 * s;
      checks.push_back({"supervisor J_a within 3x of linear J_a (" + std::string(to_string(ic)) + ")",
                        ok, num(s) + " vs " + num(l)});
    }
  }
  return checks;
}

int cmd_lorenz_table(const LorenzFlags& flags, const std::string& out_flag, unsigned seed) {
  const bool disturbed = flags.disturbed == "on";
  LorenzSetup setup;
  setup.chi_factor = flags.chi_factor;
  setup.horizon = flags.tend;
  const IntegratorConfig cfg = integrator_for(flags.step, flags.tend);
  const fs::path dir = output_dir(out_flag);

  struct Job {
    LorenzStrategy strategy;
    LorenzInitial initial;
  };
  std::vector<Job> jobs;
  for (const auto s : {LorenzStrategy::cancel, LorenzStrategy::linear, LorenzStrategy::none,
                       LorenzStrategy::supervisor}) {
    for (const auto ic : {LorenzInitial::small, LorenzInitial::large}) jobs.push_back({s, ic});
  }

  // Each worker writes only its own slot, so the table order is fixed
  // regardless of completion order.
  std::vector<LorenzCell> cells(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        cells[i] = run_lorenz_cell(setup, jobs[i].strategy, jobs[i].initial, disturbed, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_workers =
      static_cast<std::size_t>(std::clamp(flags.jobs, 1, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::string tag = disturbed ? "on" : "off";
  CsvWriter w((dir / ("lorenz_table_" + tag + ".csv")).string(),
              {"control", "initial", "J_e", "J_a", "J_u", "switches"});
  json rows = json::array();
  std::printf("%-11s %-6s %12s %12s %12s %9s\n", "control", "ic", "J_e", "J_a", "J_u", "switches");
  for (const auto& c : cells) {
    const std::string s(to_string(c.strategy));
    const std::string ic(to_string(c.initial));
    w.row(std::vector<std::string>{s, ic, num(c.perf.j_e), num(c.perf.j_a), num(c.perf.j_u),
                                   std::to_string(c.switches)});
    rows.push_back({{"control", s}, {"initial", ic}, {"J_e", c.perf.j_e}, {"J_a", c.perf.j_a},
                    {"J_u", c.perf.j_u}, {"switches", c.switches}});
    std::printf("%-11s %-6s %12.4f %12.6f %12.4f %9zu\n", s.c_str(), ic.c_str(), c.perf.j_e,
                c.perf.j_a, c.perf.j_u, c.switches);
  }
  const auto checks = lorenz_checks(cells, disturbed);
  const LorenzParams& p = setup.params;
  json meta{{"disturbed", disturbed},
            {"integrator", integrator_json(cfg)},
            {"chi_factor", setup.chi_factor},
            {"chi", default_chi(Partition(setup.partition), setup.chi_factor)},
            {"partition", setup.partition},
            {"mode_assignment", setup.mode_assignment},
            {"params", {{"sigma", p.sigma}, {"rho", p.rho}, {"beta", p.beta},
                        {"lambda", p.lambda}, {"alpha", p.alpha}}},
            {"horizon", setup.horizon},
            {"jobs", n_workers},
            {"seed", seed}};
  write_json(dir / ("lorenz_table_" + tag + ".json"),
             {{"metadata", meta}, {"rows", rows}, {"checks", checks_to_json(checks)}});
  return report(checks);
}

// --------------------------------------------------------- threshold sweep

struct SweepFlags {
  double s = 10.0;
  double eps = 0.01;
  std::vector<double> rates{1.0, 1.0};
  std::vector<double> overshoot{1.0, 1.0};
  std::optional<double> grid;
};

int cmd_sweep_threshold(const SweepFlags& flags, const std::string& out_flag) {
  if (flags.rates.size() != 2 || flags.overshoot.size() != 2) {
    throw std::invalid_argument("--rates and --overshoot take two values (upper, lower)");
  }
  const KLExp upper{flags.overshoot[0], flags.rates[0]};
  const KLExp lower{flags.overshoot[1], flags.rates[1]};
  upper.validate();
  lower.validate();
  const double grid = flags.grid.value_or((flags.s - flags.eps) / 1000.0);
  const auto curve = threshold_curve(upper, lower, flags.s, flags.eps, grid);
  const ThresholdChoice best = optimal_threshold(upper, lower, flags.s, flags.eps, grid);

  const fs::path dir = output_dir(out_flag);
  CsvWriter w((dir / "sweep_threshold.csv").string(), {"delta", "total_time"});
  for (const auto& p : curve) w.row(std::vector<double>{p.threshold, p.total_time});
  write_json(dir / "sweep_threshold.json",
             {{"s", flags.s}, {"eps", flags.eps}, {"grid", grid},
              {"upper", {{"a", upper.a}, {"b", upper.b}}},
              {"lower", {{"a", lower.a}, {"b", lower.b}}},
              {"argmin", {{"delta", best.threshold}, {"total_time", best.total_time}}}});
  std::printf("delta,total_time\n%s,%s\n", num(best.threshold).c_str(), num(best.total_time).c_str());
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string config;
  std::optional<double> step;
  std::optional<double> tend;
};

int cmd_simulate(const SimulateFlags& flags, const std::string& out_flag, bool out_given,
                 unsigned seed) {
  ExperimentConfig cfg = load_experiment(flags.config);
  if (flags.step) {
    cfg.integrator.step_size = *flags.step;
    cfg.integrator.event_tolerance = std::min(cfg.integrator.event_tolerance, 0.1 * *flags.step);
  }
  if (flags.tend) cfg.integrator.t_end = *flags.tend;
  cfg.integrator.validate();
  const BuiltExperiment ex = build_experiment(cfg);

  const auto violations = ex.has_bounds ? validate_config(ex.family, ex.config, ex.betas)
                                        : validate_structure(ex.family, ex.config);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::fprintf(stderr, "config violation (interval %d): %s\n", v.interval, v.what.c_str());
    }
    return 1;
  }

  const fs::path dir = output_dir(out_given ? out_flag : cfg.out);
  const SimulationResult res =
      simulate(ex.family, cfg.supervisor, ex.config, ex.x0, ex.disturbance, cfg.integrator);
  write_trajectory_csv((dir / "trajectory.csv").string(), res.trajectory);
  write_switches_csv(dir / "switches.csv", res.log);

  std::vector<Check> checks;
  if (ex.has_bounds) {
    const bool dwell = cfg.supervisor == SupervisorKind::dwell;
    const BoundReport bound =
        dwell ? theorem1_monitor(res.trajectory, ex.disturbance, ex.betas, ex.gamma, ex.config, {})
              : theorem2_monitor(res.trajectory, ex.disturbance, ex.betas, ex.gamma, ex.config, {});
    write_bounds_csv(dir / "bounds.csv", bound);
    checks.push_back({dwell ? "dwell-supervisor bound margin >= 0"
                            : "hysteresis-supervisor bound margin >= 0",
                      bound.worst_margin >= 0.0, num(bound.worst_margin)});
  }
  if (cfg.supervisor == SupervisorKind::dwell) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < res.log.events.size(); ++j) {
      min_gap = std::min(min_gap, res.log.events[j].time - res.log.events[j - 1].time);
    }
    const double floor = ex.config.t_min - 2.0 * cfg.integrator.event_tolerance;
    if (!ex.config.zero_bottom_dwell) {
      checks.push_back({"inter-switch gap >= t_min", !(min_gap < floor),
                        std::isfinite(min_gap) ? num(min_gap) : "no consecutive switches"});
    }
  } else {
    bool adjacent = true;
    for (const auto& e : res.log.events) adjacent = adjacent && std::abs(e.to_interval - e.from_interval) == 1;
    checks.push_back({"hysteresis switches are adjacent", adjacent,
                      std::to_string(res.log.events.size()) + " events"});
  }

  json resolved = ex.resolved;
  resolved["seed"] = seed;
  write_json(dir / "summary.json",
             {{"config", resolved},
              {"switches", res.log.events.size()},
              {"final_interval", res.trajectory.intervals.back()},
              {"final_norm_y", res.trajectory.output_norms.back()},
              {"checks", checks_to_json(checks)}});
  std::printf("%zu samples, %zu switches, final |y| = %s\n", res.trajectory.size(),
              res.log.events.size(), num(res.trajectory.output_norms.back()).c_str());
  return report(checks);
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const auto n = traj.states.front().size();
  Eigen::Index m = 0;
  for (const auto& u : traj.controls) m = std::max(m, u.size());
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < n; ++i) header.push_back("x" + std::to_string(i));
  header.insert(header.end(), {"norm_y", "q", "mode"});
  for (Eigen::Index i = 0; i < m; ++i) header.push_back("u" + std::to_string(i));
  CsvWriter w(path, header);
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    row.assign({traj.times[k]});
    for (Eigen::Index i = 0; i < n; ++i) row.push_back(traj.states[k](i));
    row.push_back(traj.output_norms[k]);
    row.push_back(traj.intervals[k]);
    row.push_back(traj.modes[k]);
    for (Eigen::Index i = 0; i < m; ++i) {
      row.push_back(i < traj.controls[k].size() ? traj.controls[k](i) : 0.0);
    }
    w.row(row);
  }
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"switchkit: supervisory switched-system simulations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out = "switchkit_out";
  unsigned seed = 0;
  auto* out_opt = app.add_option("--out", out, "output directory (SWITCHKIT_OUT overrides)");
  app.add_option("--seed", seed, "seed recorded in run metadata");

  PendulumFlags pf;
  auto* pend = app.add_subcommand("pendulum", "hybrid pendulum observer");
  pend->add_option("--step", pf.step, "integrator step [s]")->check(CLI::PositiveNumber);
  pend->add_option("--tend", pf.tend, "horizon [s]")->check(CLI::PositiveNumber);
  pend->add_option("--dwell", pf.dwell, "constant dwell time [s]")->check(CLI::PositiveNumber);
  pend->add_option("--omega", pf.omega, "pendulum frequency [rad/s]");

  LorenzFlags lf;
  auto* lor = app.add_subcommand("lorenz-table", "Lorenz synchronization performance table");
  lor->add_option("--disturbed", lf.disturbed, "apply the master disturbance")
      ->check(CLI::IsMember({"on", "off"}));
  lor->add_option("--step", lf.step, "integrator step [s]")->check(CLI::PositiveNumber);
  lor->add_option("--tend", lf.tend, "horizon T [s]")->check(CLI::PositiveNumber);
  lor->add_option("--chi-factor", lf.chi_factor, "switch band fraction of each interval")
      ->check(CLI::Range(0.0, 1.0));
  lor->add_option("--jobs", lf.jobs, "worker threads")->check(CLI::PositiveNumber);

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep-threshold", "optimal switching threshold sweep");
  sweep->add_option("--s", sf.s, "initial output norm")->check(CLI::PositiveNumber);
  sweep->add_option("--eps", sf.eps, "target level")->check(CLI::PositiveNumber);
  sweep->add_option("--rates", sf.rates, "decay rates b_upper b_lower")->expected(2)->delimiter(',');
  sweep->add_option("--overshoot", sf.overshoot, "overshoot a_upper a_lower")->expected(2)->delimiter(',');
  sweep->add_option("--grid", sf.grid, "threshold grid spacing")->check(CLI::PositiveNumber);

  SimulateFlags mf;
  auto* sim = app.add_subcommand("simulate", "run a JSON experiment config");
  sim->add_option("--config", mf.config, "experiment config path")->required();
  sim->add_option("--step", mf.step, "integrator step override [s]")->check(CLI::PositiveNumber);
  sim->add_option("--tend", mf.tend, "horizon override [s]")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pend) return cmd_pendulum(pf, out, seed);
    if (*lor) return cmd_lorenz_table(lf, out, seed);
    if (*sweep) return cmd_sweep_threshold(sf, out);
    if (*sim) return cmd_simulate(mf, out, out_opt->count() > 0, seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "switchkit: %s\n", e.what());
    return 1;
  }
  return 2;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace switchkit
