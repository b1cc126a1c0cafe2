#include "switchkit/integrator.hpp"

#include "switchkit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace switchkit {

void IntegratorConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw std::invalid_argument("step_size must be positive");
  }
  if (!(event_tolerance > 0.0) || !(event_tolerance < step_size)) {
    throw std::invalid_argument("event_tolerance must lie in (0, step_size)");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("t_end must be positive");
  }
}

namespace {

void require_finite(const Vector& v, double t) {
  if (!v.allFinite()) {
    throw DivergenceError("non-finite state during integration", t);
  }
}

}  // namespace

Vector rk4_step(const TimeField& f, double t, const Vector& x, double h) {
  const double half = 0.5 * h;
  const Vector k1 = f(t, x);
  require_finite(k1, t);
  const Vector k2 = f(t + half, x + half * k1);
  require_finite(k2, t);
  const Vector k3 = f(t + half, x + half * k2);
  require_finite(k3, t);
  const Vector k4 = f(t + h, x + h * k3);
  require_finite(k4, t);
  Vector next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  require_finite(next, t);
  return next;
}

double locate_crossing(const std::function<double(double)>& g, double t_lo,
                       double t_hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (t_hi < t_lo) throw std::invalid_argument("empty bracket");
  const double g_lo = g(t_lo);
  const double g_hi = g(t_hi);
  if (g_lo == 0.0) return t_lo;
  if (g_hi == 0.0) return t_hi;
  if (!std::isfinite(g_lo) || !std::isfinite(g_hi) ||
      std::signbit(g_lo) == std::signbit(g_hi)) {
    throw NoCrossingError("no crossing in bracket");
  }
  const bool lo_negative = std::signbit(g_lo);
  double exact = std::nan("");
  const Bracket b = bisect(
      [&](double t) {
        const double v = g(t);
        if (v == 0.0) {
          exact = t;
          return true;
        }
        return std::signbit(v) != lo_negative;
      },
      t_lo, t_hi, tol);
  if (!std::isnan(exact) && exact >= b.lo && exact <= b.hi) return exact;
  return b.lo + 0.5 * (b.hi - b.lo);
}

}  // namespace switchkit
