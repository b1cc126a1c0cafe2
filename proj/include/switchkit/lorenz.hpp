#pragma once

// Master-slave synchronization of two Lorenz oscillators. The master carries
// the disturbance d, the slave receives the control u = (u1, u2) in its y and
// z equations, and the supervised output is the synchronization error
// e = master - slave.
//
// State layout: (x1, y1, z1, x2, y2, z2), master first.

#include "switchkit/integrator.hpp"
#include "switchkit/performance.hpp"
#include "switchkit/simulate.hpp"
#include "switchkit/switched_system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace switchkit {

/// Family index of each control law.
enum class LorenzControl : int { cancel = 0, linear = 1, none = 2 };

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  double lambda = 0.1;  ///< cancellation margin, in (0, 1)
  double alpha = 28.0;  ///< linear feedback gain, > rho - 1

  void validate() const;
};

struct LorenzSetup {
  LorenzParams params;
  std::vector<double> partition{0.0, 0.1, 1.0, 5.0};
  /// none below 0.1, linear up to 1, cancel up to 5, none above.
  std::vector<int> mode_assignment{2, 1, 0, 2};
  double chi_factor = 0.8;
  double horizon = 30.0;
};

/// u for the given law at the coupled state.
Vector lorenz_control(const LorenzParams& p, LorenzControl c, const Vector& state);

Vector lorenz_coupled_rhs(const LorenzParams& p, LorenzControl c, double t,
                          const Vector& state, const Vector& d);

/// Error-system matrix under the linear law u1 = alpha e1, u2 = 0.
Matrix linear_error_matrix(const LorenzParams& p);

ModeFamily lorenz_family(const LorenzParams& p);

/// Hysteresis supervisor config with bands from setup.chi_factor.
SupervisorConfig lorenz_config(const LorenzSetup& setup);

/// Small and large initial deviation between master and slave.
enum class LorenzInitial { small, large };

Vector lorenz_initial_state(LorenzInitial ic);

/// (5 sin 0.5t, -5 cos 0.1t, 2.5 sin t) when disturbed, zero otherwise.
Disturbance lorenz_disturbance(bool disturbed);

enum class LorenzStrategy { cancel, linear, none, supervisor };

std::string_view to_string(LorenzStrategy s);
LorenzStrategy lorenz_strategy_from_string(std::string_view name);
std::string_view to_string(LorenzInitial ic);

struct LorenzCell {
  LorenzStrategy strategy = LorenzStrategy::supervisor;
  LorenzInitial initial = LorenzInitial::small;
  bool disturbed = false;
  Performance perf;
  std::size_t switches = 0;
  SimulationResult result;
};

LorenzCell run_lorenz_cell(const LorenzSetup& setup, LorenzStrategy strategy,
                           LorenzInitial ic, bool disturbed, const IntegratorConfig& cfg);

}  // namespace switchkit
