#include "switchkit/performance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace switchkit {

namespace {

// Trapezoid integral of the piecewise-linear interpolant of f over [a, b].
double clipped_trapezoid(const std::vector<double>& t, const std::vector<double>& f,
                         double a, double b) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double lo = std::max(a, t[k]);
    const double hi = std::min(b, t[k + 1]);
    if (!(hi > lo)) continue;
    const double span = t[k + 1] - t[k];
    const auto at = [&](double s) { return f[k] + (f[k + 1] - f[k]) * (s - t[k]) / span; };
    total += 0.5 * (hi - lo) * (at(lo) + at(hi));
  }
  return total;
}

}  // namespace

Performance performance(const Trajectory& traj, double horizon) {
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  if (traj.size() < 2 || traj.times.front() > 0.0 ||
      traj.times.back() < horizon * (1.0 - 1e-12)) {
    throw std::domain_error("trajectory does not span [0, T]");
  }
  std::vector<double> e2(traj.size());
  std::vector<double> u2(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    e2[k] = traj.output_norms[k] * traj.output_norms[k];
    u2[k] = traj.controls[k].size() == 0 ? 0.0 : traj.controls[k].squaredNorm();
  }
  Performance p;
  p.j_e = clipped_trapezoid(traj.times, e2, 0.0, horizon) / horizon;
  p.j_a = 10.0 * clipped_trapezoid(traj.times, e2, 0.9 * horizon, horizon) / horizon;
  p.j_u = clipped_trapezoid(traj.times, u2, 0.0, horizon) / horizon;
  return p;
}

}  // namespace switchkit
