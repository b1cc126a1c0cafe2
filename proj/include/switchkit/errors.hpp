#pragma once

#include <stdexcept>
#include <string>

namespace switchkit {

/// Thrown when an integration step produces a non-finite value.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}

  /// Start of the step that failed; the state there was still finite.
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

/// Thrown by root bracketing when the bracket has no sign change.
class NoCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested construction has no solution (dwell target below the margin,
/// Lyapunov equation without a positive definite solution, empty grid).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace switchkit
