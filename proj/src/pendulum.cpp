#include "switchkit/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace switchkit {

ObserverGain gain_from_eigs(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) {
    throw std::invalid_argument("observer eigenvalues must be negative (pass l > 0)");
  }
  return {l1 + l2, l1 * l2};
}

Matrix observer_error_matrix(const ObserverGain& gain) {
  Matrix g(2, 2);
  g << -gain.k1, 1.0, -gain.k2, 0.0;
  return g;
}

void PendulumObserverSetup::validate() const {
  if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
  if (gains.empty() || alphas.size() != gains.size()) {
    throw std::invalid_argument("need one alpha per observer gain");
  }
  for (const auto& g : gains) {
    if (!(g.k1 > 0.0) || !(g.k2 > 0.0)) {
      throw std::invalid_argument("observer gains must be positive");
    }
  }
  if (x0.size() != 2 || z0.size() != 2) {
    throw std::invalid_argument("pendulum and observer states are 2-vectors");
  }
  if (!(dwell > 0.0)) throw std::invalid_argument("dwell must be positive");
  if (partition.empty() || partition.front() != 0.0 ||
      std::adjacent_find(partition.begin(), partition.end(), std::greater_equal<>()) !=
          partition.end()) {
    throw std::invalid_argument("partition must start at 0 and increase strictly");
  }
  if (mode_assignment.size() != partition.size() || chi.size() != partition.size()) {
    throw std::invalid_argument("need one mode and one chi per interval");
  }
}

Vector pendulum_coupled_rhs(const PendulumObserverSetup& setup, const ObserverGain& gain,
                            double /*t*/, const Vector& s, const Vector& d) {
  const double w2 = setup.omega * setup.omega;
  const double innovation = s(0) - s(2);
  const double gravity = -w2 * std::sin(s(0));
  Vector out(4);
  out << s(1), gravity + d(0), s(3) + gain.k1 * innovation, gravity + gain.k2 * innovation;
  return out;
}

ModeFamily pendulum_family(const PendulumObserverSetup& setup) {
  setup.validate();
  ModeFamily family;
  family.state_dim = 4;
  family.disturbance_dim = 1;
  family.output_dim = 2;
  family.output_map = [](const Vector& s) {
    Vector e(2);
    e << s(0) - s(2), s(1) - s(3);
    return e;
  };
  for (std::size_t i = 0; i < setup.gains.size(); ++i) {
    const ObserverGain gain = setup.gains[i];
    family.modes.push_back(
        {pendulum_mode_name(static_cast<int>(i)),
         [setup, gain](double t, const Vector& s, const Vector& d) {
           return pendulum_coupled_rhs(setup, gain, t, s, d);
         },
         nullptr});
  }
  return family;
}

SupervisorConfig pendulum_config(const PendulumObserverSetup& setup) {
  SupervisorConfig config;
  config.partition = Partition(setup.partition);
  config.mode_assignment = setup.mode_assignment;
  config.chi = setup.chi;
  config.dwell.assign(setup.partition.size(), constant_dwell(setup.dwell));
  config.t_min = setup.dwell;
  return config;
}

Disturbance pendulum_disturbance(const PendulumObserverSetup& setup) {
  const double amp = setup.disturbance_amplitude;
  const double freq = setup.disturbance_frequency;
  return [amp, freq](double t) {
    Vector d(1);
    d(0) = amp * std::sin(freq * t);
    return d;
  };
}

Vector pendulum_initial_state(const PendulumObserverSetup& setup) {
  Vector s(4);
  s << setup.x0[0], setup.x0[1], setup.z0[0], setup.z0[1];
  return s;
}

std::vector<SiiosEstimate> pendulum_estimates(const PendulumObserverSetup& setup) {
  setup.validate();
  Matrix b(2, 1);
  b << 0.0, 1.0;
  std::vector<SiiosEstimate> out;
  for (std::size_t i = 0; i < setup.gains.size(); ++i) {
    const Matrix p = solve_lyapunov_small(observer_error_matrix(setup.gains[i]), setup.alphas[i]);
    out.push_back(lure_siios_estimate(p, setup.alphas[i], b));
  }
  return out;
}

std::vector<KLExp> pendulum_betas(const PendulumObserverSetup& setup) {
  std::vector<KLExp> out;
  for (const auto& e : pendulum_estimates(setup)) out.push_back(e.beta);
  return out;
}

GainFn pendulum_gamma(const PendulumObserverSetup& setup) {
  GainFn g;
  for (const auto& e : pendulum_estimates(setup)) g.c = std::max(g.c, e.gamma.c);
  return g;
}

PendulumRun run_pendulum_observer(const PendulumObserverSetup& setup,
                                  std::optional<int> fixed_mode,
                                  const IntegratorConfig& cfg, double level) {
  const ModeFamily family = pendulum_family(setup);
  const Disturbance d = pendulum_disturbance(setup);
  const Vector s0 = pendulum_initial_state(setup);

  PendulumRun run;
  if (fixed_mode) {
    run.name = pendulum_mode_name(*fixed_mode);
    run.result = simulate_mode(family, *fixed_mode, s0, d, cfg);
  } else {
    run.name = "hybrid";
    run.result = simulate(family, SupervisorKind::dwell, pendulum_config(setup), s0, d, cfg);
  }
  const Trajectory& traj = run.result.trajectory;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    run.peak_e2 = std::max(run.peak_e2, std::abs(traj.outputs[k](1)));
    if (!std::isfinite(run.time_to_level) && traj.output_norms[k] <= level) {
      run.time_to_level = traj.times[k];
    }
  }
  run.switches = run.result.log.events.size();
  return run;
}

std::string pendulum_mode_name(int mode) {
  switch (mode) {
    case kSlow: return "slow";
    case kMedian: return "median";
    case kFast: return "fast";
    default: return "gain" + std::to_string(mode);
  }
}

}  // namespace switchkit
