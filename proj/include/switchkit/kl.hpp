#pragma once

#include <cmath>

namespace switchkit {

/// Exponential class-KL estimate beta(s, r) = a * s * exp(-b * r).
struct KLExp {
  double a = 1.0;  ///< overshoot, beta(s, 0) = a * s, a >= 1
  double b = 1.0;  ///< decay rate, b > 0

  double operator()(double s, double r) const { return a * s * std::exp(-b * r); }
  double at_zero(double s) const { return a * s; }

  /// Throws std::invalid_argument unless a >= 1 and b > 0.
  void validate() const;
};

/// Linear class-K gain gamma(s) = c * s.
struct GainFn {
  double c = 0.0;

  double operator()(double s) const { return c * s; }
};

}  // namespace switchkit
