#include "switchkit/simulate.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace switchkit {

namespace {

void check_inputs(const ModeFamily& family, const SupervisorConfig& config,
                  const Vector& x0, const IntegratorConfig& cfg) {
  cfg.validate();
  family.validate();
  if (x0.size() != family.state_dim || !x0.allFinite()) {
    throw std::invalid_argument("initial state must be finite with the family's dimension");
  }
  const auto violations = validate_structure(family, config);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid supervisor config: " + violations.front().what);
  }
}

}  // namespace

SimulationResult simulate(const ModeFamily& family, const SupervisorState& initial,
                          const SupervisorConfig& config, const Vector& x0,
                          const Disturbance& d, const IntegratorConfig& cfg) {
  check_inputs(family, config, x0, cfg);
  if (initial.q < 0 || initial.q > config.top()) {
    throw std::invalid_argument("initial interval out of range");
  }

  SimulationResult out;
  Trajectory& traj = out.trajectory;
  SupervisorState state = initial;

  const auto mode_index = [&](int q) {
    return config.mode_assignment[static_cast<std::size_t>(q)];
  };
  const auto output_norm = [&](const Vector& x) { return family.output_map(x).norm(); };
  const auto record = [&](double t, const Vector& x) {
    const int theta = mode_index(state.q);
    const Mode& m = family.modes[static_cast<std::size_t>(theta)];
    traj.append(t, x, family.output_map(x), m.control ? m.control(t, x) : Vector(),
                state.q, theta);
  };

  const double h = cfg.step_size;
  const auto reserve = static_cast<std::size_t>(cfg.t_end / h) + 2;
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.outputs.reserve(reserve);
  traj.controls.reserve(reserve);
  traj.output_norms.reserve(reserve);
  traj.intervals.reserve(reserve);
  traj.modes.reserve(reserve);

  double t = 0.0;
  Vector x = x0;
  // Grid points are segment_start + n * h so rounding does not accumulate.
  double segment_start = 0.0;
  long long n = 0;
  record(t, x);

  while (t < cfg.t_end) {
    double t_next = segment_start + static_cast<double>(n + 1) * h;
    if (t_next >= cfg.t_end - 1e-9 * h) t_next = cfg.t_end;

    const Mode& m = family.modes[static_cast<std::size_t>(mode_index(state.q))];
    const TimeField f = [&](double tau, const Vector& xs) { return m.rhs(tau, xs, d(tau)); };
    const Vector x_next = rk4_step(f, t, x, t_next - t);

    if (!switch_target(state, t_next, output_norm(x_next), config)) {
      t = t_next;
      x = x_next;
      ++n;
      record(t, x);
      continue;
    }

    const auto state_at = [&](double tau) {
      return tau >= t_next ? x_next : rk4_step(f, t, x, tau - t);
    };
    const auto switching = [&](double tau) {
      return switch_target(state, tau, output_norm(state_at(tau)), config).has_value();
    };
    const Bracket bracket = bisect(switching, t, t_next, cfg.event_tolerance);
    const double t_switch = bracket.hi;
    const Vector x_switch = state_at(t_switch);
    const SupervisorStep step =
        supervisor_step(state, t_switch, output_norm(x_switch), config);
    if (!step.switched) {
      throw std::logic_error("event location lost the switching condition");
    }
    out.log.events.push_back({t_switch, state.q, step.state.q});
    state = step.state;
    t = t_switch;
    x = x_switch;
    segment_start = t_switch;
    n = 0;
    record(t, x);
  }
  return out;
}

SimulationResult simulate(const ModeFamily& family, SupervisorKind kind,
                          const SupervisorConfig& config, const Vector& x0,
                          const Disturbance& d, const IntegratorConfig& cfg) {
  check_inputs(family, config, x0, cfg);
  const double v0 = family.output_map(x0).norm();
  return simulate(family, init_supervisor(kind, v0, config), config, x0, d, cfg);
}

SimulationResult simulate_mode(const ModeFamily& family, int mode, const Vector& x0,
                               const Disturbance& d, const IntegratorConfig& cfg) {
  if (mode < 0 || mode >= family.size()) throw std::out_of_range("mode index");
  SupervisorConfig fixed;
  fixed.partition = Partition({0.0});
  fixed.mode_assignment = {mode};
  fixed.chi = {1.0};
  SupervisorState state;
  state.kind = SupervisorKind::hysteresis;
  return simulate(family, state, fixed, x0, d, cfg);
}

}  // namespace switchkit
