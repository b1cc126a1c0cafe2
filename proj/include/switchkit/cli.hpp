#pragma once

// Command-line front end. Subcommands:
//
//   pendulum         slow / median / fast / hybrid observer runs + summary
//   lorenz-table     4 controls x 2 initial conditions performance table
//   sweep-threshold  total convergence time over the switching threshold
//   simulate         run a JSON experiment config
//
// Exit codes: 0 when every check in the run report passes, 1 on a failed
// check or a runtime failure, 2 on a usage error. SWITCHKIT_OUT, when set,
// overrides --out.

#include "switchkit/trajectory.hpp"

#include <string>
#include <vector>

namespace switchkit {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

/// Columns: t, x0..x{n-1}, norm_y, q, mode, u0..u{k-1} (u = 0 where a mode
/// has no explicit control).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace switchkit
