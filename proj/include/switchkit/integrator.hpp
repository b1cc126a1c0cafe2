#pragma once

#include <Eigen/Dense>

#include <functional>

namespace switchkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Right-hand side dx/dt = f(t, x) of a non-switching flow.
using TimeField = std::function<Vector(double, const Vector&)>;

struct IntegratorConfig {
  double step_size = 1e-3;
  double event_tolerance = 1e-6;
  double t_end = 10.0;

  /// Throws std::invalid_argument unless 0 < event_tolerance < step_size and
  /// t_end > 0.
  void validate() const;
};

/// One classical four-stage Runge-Kutta step of size h from (t, x).
/// Throws DivergenceError (last valid time t) if any stage is non-finite.
Vector rk4_step(const TimeField& f, double t, const Vector& x, double h);

struct Bracket {
  double lo;
  double hi;
};

/// Shrinks [lo, hi] by bisection until hi - lo <= tol, keeping
/// inside(lo) == false and inside(hi) == true. The caller guarantees the
/// endpoint predicate values; they are not re-evaluated.
template <class Predicate>
Bracket bisect(Predicate&& inside, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // no representable midpoint left
    if (inside(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

/// Root of g on [t_lo, t_hi] to within tol. Requires a sign change (or a zero
/// endpoint); throws NoCrossingError("no crossing in bracket") otherwise.
double locate_crossing(const std::function<double(double)>& g, double t_lo,
                       double t_hi, double tol);

}  // namespace switchkit
