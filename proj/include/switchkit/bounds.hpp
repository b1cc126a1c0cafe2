#pragma once

// Exponential class-KL algebra, dwell-time constructions, the trajectory
// bound monitors for both supervisors, convergence-time estimates, and the
// two-mode switching threshold optimizer.

#include "switchkit/kl.hpp"
#include "switchkit/switched_system.hpp"
#include "switchkit/trajectory.hpp"

#include <vector>

namespace switchkit {

/// chi(s) = beta^{-1}(s, 0) = s / a.
double chi(const KLExp& beta, double s);

/// Smallest T >= 0 with beta(s, T) + margin = target:
/// max(0, ln(a s / (target - margin)) / b). Throws InfeasibleError when
/// target <= margin.
double dwell_from_beta(const KLExp& beta, double s, double target,
                       double margin = 0.0);

/// Time for the estimate beta(s, .) to reach level; 0 once a s <= level.
/// Throws std::domain_error for level <= 0.
double time_to_level(const KLExp& beta, double s, double level);

struct ThresholdChoice {
  double threshold;
  double total_time;
};

struct ThresholdSample {
  double threshold;
  double total_time;
};

/// Total convergence time T_1(s, D) + T_0(D, eps) on the grid
/// D = eps + k * grid in (eps, s].
std::vector<ThresholdSample> threshold_curve(const KLExp& upper_mode,
                                             const KLExp& lower_mode, double s,
                                             double eps, double grid);

/// Grid argmin of threshold_curve; ties go to the smaller threshold.
/// Throws std::domain_error unless 0 < eps < s and grid > 0, InfeasibleError
/// when the grid is empty.
ThresholdChoice optimal_threshold(const KLExp& upper_mode, const KLExp& lower_mode,
                                  double s, double eps, double grid);

DwellFn constant_dwell(double value);

/// Dwell functions that wait for the active mode's estimate to reach the
/// band of the interval below:
///   T_0 == dwell_from_beta(beta_{theta_0}, Delta_1, 0.5 a Delta_1, m_0)
///   T_q(s) = dwell_from_beta(beta_{theta_q}, s, chi_{theta_{q-1}}(Delta_q), m_q)
/// margins (gamma(D_q) values) default to zero. betas is indexed by mode.
std::vector<DwellFn> level_dwell_functions(const Partition& partition,
                                           const std::vector<int>& mode_assignment,
                                           const std::vector<KLExp>& betas,
                                           const std::vector<double>& margins = {});

/// Band upper ends chi_q = chi_{theta_q}(Delta_{q+1}); the top interval has
/// no upper threshold and gets top_factor * Delta_M.
std::vector<double> chi_from_betas(const Partition& partition,
                                   const std::vector<int>& mode_assignment,
                                   const std::vector<KLExp>& betas,
                                   double top_factor = 2.0);

/// Sampled min over q of inf T_q on its domain.
double dwell_infimum(const SupervisorConfig& config);

enum class ConvergenceVariant { dwell_supervisor, hysteresis_supervisor };

/// Upper estimate of the time |y| needs to enter {|y| <= 0.5 Delta_1} with
/// d == 0, starting in interval r: sum_{k<=r} T_k(Delta_{k+1}); the
/// hysteresis variant adds T_r(Delta_{r+1}) + T_{r+1}(Delta_{r+1}).
double convergence_time_bound(const SupervisorConfig& config, int r,
                              ConvergenceVariant variant);

struct BoundSample {
  double t;
  double output_norm;
  double bound;
  double margin;
};

struct BoundReport {
  std::vector<BoundSample> samples;
  double worst_margin;
};

/// Checks |y(t)| <= max_i a_i * max{2 Delta_M, |h(x0)|} + gamma_bar(S[d,0,t])
/// with gamma_bar(s) = gamma(s) + beta_{theta_M}(2 gamma(s), 0) at every
/// trajectory sample. The norm reuses the trajectory grid.
BoundReport theorem1_monitor(const Trajectory& traj, const Disturbance& d,
                             const std::vector<KLExp>& betas, const GainFn& gamma,
                             const SupervisorConfig& config,
                             const GeneralizedNormParams& norm);

/// Hysteresis-supervisor bound max_i a_i * max{Delta_M, |h(x0)|} + gamma(S).
BoundReport theorem2_monitor(const Trajectory& traj, const Disturbance& d,
                             const std::vector<KLExp>& betas, const GainFn& gamma,
                             const SupervisorConfig& config,
                             const GeneralizedNormParams& norm);

struct SiiosEstimate {
  KLExp beta;
  GainFn gamma;
  double rho;
};

/// Exponential output estimate of an observer error e' = G e + B d whose
/// Lyapunov matrix P satisfies G^T P + P G <= -alpha P:
///   a = sqrt(2 lambda_max(P) / lambda_min(P)),  b = alpha / 4,
///   c = 2 rho sigma_max(B),  rho = sigma_max(P) / (sqrt(alpha) lambda_min(P)).
/// Throws std::invalid_argument if P is not symmetric positive definite.
SiiosEstimate lure_siios_estimate(const Matrix& P, double alpha, const Matrix& B);

/// P solving (G + alpha/2 I)^T P + P (G + alpha/2 I) = -I for n <= 4, via the
/// n^2-dimensional vectorized system. Throws InfeasibleError unless every
/// eigenvalue of G has real part below -alpha/2.
Matrix solve_lyapunov_small(const Matrix& G, double alpha);

bool is_hurwitz(const Matrix& A);

}  // namespace switchkit
