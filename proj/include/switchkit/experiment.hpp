#pragma once

// JSON experiment configuration for the command-line tool.
//
//   {
//     "scenario": "custom" | "pendulum" | "lorenz",
//     "supervisor": "dwell" | "hysteresis",
//     "integrator": {"step_size": 1e-3, "event_tolerance": 1e-6, "t_end": 10},
//     "partition": [0, 1, 4],
//     "mode_assignment": [0, 1, 1],
//     "chi": [0.5, 3, 8]            (or "chi_factor": 0.8),
//     "dwell": 0.1                  (or one constant per interval),
//     "zero_bottom_dwell": false,
//     "disturbance": {"type": "none" | "sine" | "pendulum" | "lorenz",
//                     "amplitude": 0.05, "frequency": 0.3},
//     "modes": [{"name": "slow", "A": [[-1]], "B": [[1]]}, ...],
//     "output": [[1]],
//     "x0": [3],
//     "betas": [{"a": 1, "b": 1}, ...],
//     "gamma": 1.0,
//     "out": "results"
//   }
//
// "modes", "output" and "x0" are required for custom scenarios only; the case
// studies supply their own family, and anything given here overrides their
// partition, bands, dwell and initial state.

#include "switchkit/integrator.hpp"
#include "switchkit/kl.hpp"
#include "switchkit/supervisor.hpp"
#include "switchkit/switched_system.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace switchkit {

struct DisturbanceSpec {
  std::string type = "none";
  double amplitude = 0.0;
  double frequency = 0.0;
};

struct LinearModeSpec {
  std::string name;
  Matrix a;
  Matrix b;
};

struct ExperimentConfig {
  std::string scenario = "custom";
  SupervisorKind supervisor = SupervisorKind::dwell;
  IntegratorConfig integrator;
  std::vector<double> partition;
  std::vector<int> mode_assignment;
  std::vector<double> chi;
  double chi_factor = 0.8;
  std::vector<double> dwell;
  bool zero_bottom_dwell = false;
  std::optional<DisturbanceSpec> disturbance;
  std::vector<LinearModeSpec> modes;
  Matrix output;
  std::vector<double> x0;
  std::vector<KLExp> betas;
  std::optional<double> gamma;
  std::string out = "switchkit_out";
};

/// Throws std::invalid_argument on schema errors.
ExperimentConfig parse_experiment(const nlohmann::json& doc);
ExperimentConfig load_experiment(const std::string& path);

/// Everything a run needs, with every default filled in.
struct BuiltExperiment {
  ModeFamily family;
  SupervisorConfig config;
  Disturbance disturbance;
  Vector x0;
  std::vector<KLExp> betas;
  GainFn gamma;
  bool has_bounds = false;
  /// The resolved configuration, defaults included, for result metadata.
  nlohmann::json resolved;
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

}  // namespace switchkit
