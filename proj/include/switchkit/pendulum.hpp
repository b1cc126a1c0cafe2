#pragma once

// Hybrid observer for a lossless pendulum
//
//   x1' = x2,  x2' = -omega^2 sin(x1) + d
//   z1' = z2 + k1 (x1 - z1),  z2' = -omega^2 sin(x1) + k2 (x1 - z1)
//
// The observation error e = x - z obeys the linear system e' = G e + B d with
// G = [[-k1, 1], [-k2, 0]] and B = [0, 1]^T, whatever the pendulum does. Three
// gains (slow, median, fast) trade peaking against convergence speed; the
// supervisor picks one per band of |e|.

#include "switchkit/bounds.hpp"
#include "switchkit/integrator.hpp"
#include "switchkit/simulate.hpp"
#include "switchkit/switched_system.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace switchkit {

struct ObserverGain {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// Gain placing the error eigenvalues at -l1 and -l2.
ObserverGain gain_from_eigs(double l1, double l2);

/// G = A - K C for the pendulum error system.
Matrix observer_error_matrix(const ObserverGain& gain);

enum PendulumMode : int { kSlow = 0, kMedian = 1, kFast = 2 };

struct PendulumObserverSetup {
  double omega = 1.0;
  /// Indexed by PendulumMode.
  std::vector<ObserverGain> gains{{2.0, 1.0}, {6.0, 9.0}, {10.0, 25.0}};
  /// Decay rate certified by the Lyapunov solve, one per gain.
  std::vector<double> alphas{1.0, 3.0, 5.0};
  std::vector<double> partition{0.0, 0.1, 2.0, 5.0};
  std::vector<int> mode_assignment{kMedian, kFast, kMedian, kSlow};
  std::vector<double> chi{0.05, 1.0, 3.0, 8.0};
  double dwell = 0.01;
  double disturbance_amplitude = 0.05;
  double disturbance_frequency = 0.3;
  /// Pendulum state and observer state at t = 0.
  std::vector<double> x0{0.1, 0.0};
  std::vector<double> z0{-5.9, 0.0};

  void validate() const;
};

/// d/dt (x1, x2, z1, z2) under the given gain.
Vector pendulum_coupled_rhs(const PendulumObserverSetup& setup, const ObserverGain& gain,
                            double t, const Vector& state, const Vector& d);

/// Family of the three observers; output is the error (x1 - z1, x2 - z2).
ModeFamily pendulum_family(const PendulumObserverSetup& setup);

/// Dwell-time supervisor config with constant dwell setup.dwell.
SupervisorConfig pendulum_config(const PendulumObserverSetup& setup);

Disturbance pendulum_disturbance(const PendulumObserverSetup& setup);

Vector pendulum_initial_state(const PendulumObserverSetup& setup);

/// Per-gain exponential estimates from the Lyapunov certificate of G.
std::vector<SiiosEstimate> pendulum_estimates(const PendulumObserverSetup& setup);
std::vector<KLExp> pendulum_betas(const PendulumObserverSetup& setup);
/// The largest of the per-gain linear gains.
GainFn pendulum_gamma(const PendulumObserverSetup& setup);

struct PendulumRun {
  std::string name;
  SimulationResult result;
  double peak_e2 = 0.0;
  /// First sample with |e| <= level; +inf if never reached.
  double time_to_level = std::numeric_limits<double>::infinity();
  std::size_t switches = 0;
};

/// Runs a single observer (fixed_mode set) or the hybrid observer.
PendulumRun run_pendulum_observer(const PendulumObserverSetup& setup,
                                  std::optional<int> fixed_mode,
                                  const IntegratorConfig& cfg, double level = 0.1);

std::string pendulum_mode_name(int mode);

}  // namespace switchkit
