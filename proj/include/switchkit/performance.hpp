#pragma once

#include "switchkit/trajectory.hpp"

namespace switchkit {

/// Time-averaged quality measures of a run over [0, T]:
///   J_e = (1/T) int_0^T |y|^2,  J_a = (10/T) int_{0.9T}^T |y|^2,
///   J_u = (1/T) int_0^T |u|^2.
/// Trapezoid rule on the trajectory grid; partial steps at 0.9T and T are
/// linearly interpolated. Samples without a control count as u = 0.
struct Performance {
  double j_e = 0.0;
  double j_a = 0.0;
  double j_u = 0.0;
};

/// Throws std::domain_error if the trajectory does not span [0, T].
Performance performance(const Trajectory& traj, double horizon);

}  // namespace switchkit
