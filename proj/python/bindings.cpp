#include "switchkit/bounds.hpp"
#include "switchkit/cli.hpp"
#include "switchkit/lorenz.hpp"
#include "switchkit/pendulum.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace switchkit;

namespace {

py::dict trajectory_dict(const SimulationResult& res) {
  const Trajectory& traj = res.trajectory;
  Matrix states(static_cast<Eigen::Index>(traj.size()), traj.empty() ? 0 : traj.states.front().size());
  for (std::size_t k = 0; k < traj.size(); ++k) states.row(static_cast<Eigen::Index>(k)) = traj.states[k].transpose();
  std::vector<std::tuple<double, int, int>> events;
  for (const auto& e : res.log.events) events.emplace_back(e.time, e.from_interval, e.to_interval);
  py::dict out;
  out["t"] = traj.times;
  out["states"] = states;
  out["norm_y"] = traj.output_norms;
  out["interval"] = traj.intervals;
  out["mode"] = traj.modes;
  out["switches"] = events;
  return out;
}

PendulumObserverSetup pendulum_setup(double omega, double dwell, double amplitude) {
  PendulumObserverSetup setup;
  setup.omega = omega;
  setup.dwell = dwell;
  setup.disturbance_amplitude = amplitude;
  return setup;
}

IntegratorConfig integrator(double step, double t_end) {
  IntegratorConfig cfg;
  cfg.step_size = step;
  cfg.event_tolerance = std::min(1e-6, 0.1 * step);
  cfg.t_end = t_end;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dwell-time and hysteresis supervisors for switched systems";

  py::class_<KLExp>(m, "KLExp")
      .def(py::init([](double a, double b) {
             KLExp k{a, b};
             k.validate();
             return k;
           }),
           py::arg("a"), py::arg("b"))
      .def_readonly("a", &KLExp::a)
      .def_readonly("b", &KLExp::b)
      .def("__call__", &KLExp::operator(), py::arg("s"), py::arg("r"))
      .def("__repr__", [](const KLExp& k) {
        return "KLExp(a=" + std::to_string(k.a) + ", b=" + std::to_string(k.b) + ")";
      });

  m.def("time_to_level", &time_to_level, py::arg("beta"), py::arg("s"), py::arg("level"));
  m.def("dwell_from_beta", &dwell_from_beta, py::arg("beta"), py::arg("s"), py::arg("target"),
        py::arg("margin") = 0.0);
  m.def(
      "optimal_threshold",
      [](const KLExp& upper, const KLExp& lower, double s, double eps, double grid) {
        const auto best = optimal_threshold(upper, lower, s, eps, grid);
        return py::make_tuple(best.threshold, best.total_time);
      },
      py::arg("upper"), py::arg("lower"), py::arg("s"), py::arg("eps"), py::arg("grid"),
      "Grid argmin (threshold, total time) of the two-mode convergence time.");
  m.def("solve_lyapunov_small", &solve_lyapunov_small, py::arg("G"), py::arg("alpha"));
  m.def("is_hurwitz", &is_hurwitz, py::arg("A"));

  m.def(
      "gain_from_eigs",
      [](double l1, double l2) {
        const auto g = gain_from_eigs(l1, l2);
        return py::make_tuple(g.k1, g.k2);
      },
      py::arg("l1"), py::arg("l2"));

  m.def(
      "run_pendulum",
      [](std::optional<std::string> mode, double omega, double dwell, double amplitude, double step,
         double t_end) {
        const auto setup = pendulum_setup(omega, dwell, amplitude);
        std::optional<int> fixed;
        if (mode) {
          if (*mode == "slow") fixed = kSlow;
          else if (*mode == "median") fixed = kMedian;
          else if (*mode == "fast") fixed = kFast;
          else throw py::value_error("mode must be slow, median, fast or None");
        }
        const auto run = run_pendulum_observer(setup, fixed, integrator(step, t_end));
        py::dict out = trajectory_dict(run.result);
        out["name"] = run.name;
        out["peak_e2"] = run.peak_e2;
        out["time_to_level"] = run.time_to_level;
        out["switch_count"] = run.switches;
        return out;
      },
      py::arg("mode") = py::none(), py::arg("omega") = 1.0, py::arg("dwell") = 0.01,
      py::arg("amplitude") = 0.05, py::arg("step") = 1e-3, py::arg("t_end") = 20.0,
      "Pendulum observer run; mode=None selects the supervised hybrid observer.");

  m.def(
      "run_lorenz_cell",
      [](const std::string& strategy, const std::string& initial, bool disturbed, double step,
         double chi_factor) {
        LorenzInitial ic;
        if (initial == "small") ic = LorenzInitial::small;
        else if (initial == "large") ic = LorenzInitial::large;
        else throw py::value_error("initial must be 'small' or 'large'");
        LorenzSetup setup;
        setup.chi_factor = chi_factor;
        const auto cell = run_lorenz_cell(setup, lorenz_strategy_from_string(strategy), ic, disturbed,
                                          integrator(step, setup.horizon));
        py::dict out = trajectory_dict(cell.result);
        out["J_e"] = cell.perf.j_e;
        out["J_a"] = cell.perf.j_a;
        out["J_u"] = cell.perf.j_u;
        out["switch_count"] = cell.switches;
        return out;
      },
      py::arg("strategy"), py::arg("initial"), py::arg("disturbed") = false, py::arg("step") = 1e-3,
      py::arg("chi_factor") = 0.8);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        py::gil_scoped_release release;
        return run_cli(args);
      },
      py::arg("args"), "Runs the command-line tool in-process and returns its exit code.");
}
