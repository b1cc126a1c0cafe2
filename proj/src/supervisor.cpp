#include "switchkit/supervisor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace switchkit {

std::string_view to_string(SupervisorKind kind) {
  return kind == SupervisorKind::dwell ? "dwell" : "hysteresis";
}

SupervisorKind supervisor_kind_from_string(std::string_view name) {
  if (name == "dwell") return SupervisorKind::dwell;
  if (name == "hysteresis") return SupervisorKind::hysteresis;
  throw std::invalid_argument("unknown supervisor kind '" + std::string(name) + "'");
}

SupervisorState init_supervisor(SupervisorKind kind, double v0,
                                const SupervisorConfig& config, double t0) {
  SupervisorState s;
  s.q = interval_index(v0, config.partition);
  s.t_last_switch = t0;
  s.kind = kind;
  s.dwell_deadline =
      kind == SupervisorKind::dwell ? t0 + config.dwell_time(s.q, v0) : t0;
  return s;
}

std::optional<int> switch_target(const SupervisorState& state, double t, double v,
                                 const SupervisorConfig& config) {
  if (!std::isfinite(v)) return std::nullopt;
  if (state.kind == SupervisorKind::dwell) {
    if (t < state.dwell_deadline) return std::nullopt;
    for (int k = 0; k <= config.top(); ++k) {
      if (k != state.q && in_switch_band(v, k, config)) return k;
    }
    return std::nullopt;
  }
  for (const int k : {state.q - 1, state.q + 1}) {
    if (k >= 0 && k <= config.top() && in_switch_band(v, k, config)) return k;
  }
  return std::nullopt;
}

namespace {

SupervisorStep take(const SupervisorState& state, std::optional<int> target,
                    double t, double v, const SupervisorConfig& config) {
  if (!target) return {state, false};
  SupervisorState next = state;
  next.q = *target;
  next.t_last_switch = t;
  next.dwell_deadline =
      state.kind == SupervisorKind::dwell ? t + config.dwell_time(*target, v) : t;
  return {next, true};
}

}  // namespace

SupervisorStep dwell_step(const SupervisorState& state, double t, double v,
                          const SupervisorConfig& config) {
  if (state.kind != SupervisorKind::dwell) {
    throw std::invalid_argument("dwell_step on a hysteresis supervisor");
  }
  return take(state, switch_target(state, t, v, config), t, v, config);
}

SupervisorStep hysteresis_step(const SupervisorState& state, double t, double v,
                               const SupervisorConfig& config) {
  if (state.kind != SupervisorKind::hysteresis) {
    throw std::invalid_argument("hysteresis_step on a dwell supervisor");
  }
  return take(state, switch_target(state, t, v, config), t, v, config);
}

SupervisorStep supervisor_step(const SupervisorState& state, double t, double v,
                               const SupervisorConfig& config) {
  return take(state, switch_target(state, t, v, config), t, v, config);
}

}  // namespace switchkit
