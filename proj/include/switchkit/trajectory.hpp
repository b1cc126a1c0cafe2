#pragma once

#include "switchkit/integrator.hpp"

#include <cstddef>
#include <vector>

namespace switchkit {

/// Sampled closed-loop solution. All per-sample columns have equal length.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> outputs;
  /// Empty vectors where the active mode has no explicit control law.
  std::vector<Vector> controls;
  std::vector<double> output_norms;
  /// Active interval q and mode theta_q at each sample (right-continuous).
  std::vector<int> intervals;
  std::vector<int> modes;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }

  void append(double t, const Vector& x, const Vector& y, const Vector& u,
              int interval, int mode);
};

struct SwitchEvent {
  double time;
  int from_interval;
  int to_interval;
};

struct SwitchLog {
  std::vector<SwitchEvent> events;
  /// Average dwell-time offset N_0 used when the log is checked.
  int n0 = 1;
};

}  // namespace switchkit
