#pragma once

#include "switchkit/integrator.hpp"
#include "switchkit/supervisor.hpp"
#include "switchkit/switched_system.hpp"
#include "switchkit/trajectory.hpp"

namespace switchkit {

struct SimulationResult {
  Trajectory trajectory;
  SwitchLog log;
};

/// Integrates x' = f_{theta_q(t)}(t, x, d(t)) over [0, cfg.t_end] with fixed
/// RK4 steps. The supervisor is consulted after every step; when it would
/// switch, the switching instant inside the step is located by bisection on
/// re-integrated sub-steps to within cfg.event_tolerance, the step is cut
/// there, and the new mode starts from the same state (no reset). The
/// located instant is the first point of the bracket at which the switch
/// condition holds.
///
/// Throws DivergenceError (carrying the last valid time) on non-finite states.
SimulationResult simulate(const ModeFamily& family, const SupervisorState& initial,
                          const SupervisorConfig& config, const Vector& x0,
                          const Disturbance& d, const IntegratorConfig& cfg);

/// Same, with the supervisor initialised from |h(x0)|.
SimulationResult simulate(const ModeFamily& family, SupervisorKind kind,
                          const SupervisorConfig& config, const Vector& x0,
                          const Disturbance& d, const IntegratorConfig& cfg);

/// Runs a single mode of the family without switching.
SimulationResult simulate_mode(const ModeFamily& family, int mode, const Vector& x0,
                               const Disturbance& d, const IntegratorConfig& cfg);

}  // namespace switchkit
