#pragma once

// Switching-signal generators. Both supervisors track the active interval q;
// the dynamics in force are those of mode theta_q.
//
//  - dwell: after the dwell deadline, switch to any interval k != q whose band
//    [Delta_k, chi_k) contains |y|.
//  - hysteresis: switch immediately, but only to q - 1 or q + 1 and only once
//    |y| is inside that neighbour's band.
//
// In both cases |y| inside the hysteresis set, the union of [chi_k, Delta_{k+1}),
// never triggers a switch.

#include "switchkit/switched_system.hpp"

#include <optional>
#include <string_view>

namespace switchkit {

enum class SupervisorKind { dwell, hysteresis };

std::string_view to_string(SupervisorKind kind);
SupervisorKind supervisor_kind_from_string(std::string_view name);

struct SupervisorState {
  int q = 0;
  double t_last_switch = 0.0;
  SupervisorKind kind = SupervisorKind::dwell;
  /// t_last_switch + T_q(|y(t_last_switch)|); unused for hysteresis.
  double dwell_deadline = 0.0;
};

struct SupervisorStep {
  SupervisorState state;
  bool switched;
};

/// q = interval_index(v0), switch clock at 0. Throws std::domain_error for a
/// negative or non-finite v0.
SupervisorState init_supervisor(SupervisorKind kind, double v0,
                                const SupervisorConfig& config, double t0 = 0.0);

/// Interval the supervisor would switch to at time t with output norm v, if
/// any. Bands are disjoint so at most one candidate exists; the smallest index
/// wins should rounding ever produce two.
std::optional<int> switch_target(const SupervisorState& state, double t, double v,
                                 const SupervisorConfig& config);

SupervisorStep dwell_step(const SupervisorState& state, double t, double v,
                          const SupervisorConfig& config);

SupervisorStep hysteresis_step(const SupervisorState& state, double t, double v,
                               const SupervisorConfig& config);

/// Dispatches on state.kind.
SupervisorStep supervisor_step(const SupervisorState& state, double t, double v,
                               const SupervisorConfig& config);

}  // namespace switchkit
