#pragma once

// Data model of a switched system: the mode family, the output partition with
// its mode assignment and switch bands, the generalized disturbance norm, and
// switch-log accounting.

#include "switchkit/integrator.hpp"
#include "switchkit/kl.hpp"
#include "switchkit/trajectory.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace switchkit {

/// Disturbance signal d(t), evaluated pointwise so integrator stages can
/// query it at any time.
using Disturbance = std::function<Vector(double)>;
using ModeRhs = std::function<Vector(double, const Vector&, const Vector&)>;
using ControlLaw = std::function<Vector(double, const Vector&)>;
using OutputMap = std::function<Vector(const Vector&)>;

Disturbance zero_disturbance(int dim);

struct Mode {
  std::string name;
  ModeRhs rhs;         ///< f_i(t, x, d)
  ControlLaw control;  ///< optional; recorded into Trajectory::controls
};

/// Family of vector fields sharing state, disturbance and output dimensions
/// and one output map y = h(x).
struct ModeFamily {
  std::vector<Mode> modes;
  int state_dim = 0;
  int disturbance_dim = 0;
  int output_dim = 0;
  OutputMap output_map;

  /// Checks dimensions, that every mode has a rhs, and that h(0) and every
  /// f_i(0, 0, 0) are finite with the right sizes.
  void validate() const;
  int size() const noexcept { return static_cast<int>(modes.size()); }
};

/// Parameters of S[d, t0, t] = a * int omega(|d|) + b * sup |d|.
struct GeneralizedNormParams {
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> omega = [](double s) { return s; };

  /// a, b >= 0, a + b > 0, omega(0) = 0 and omega increasing on a probe grid.
  void validate() const;
};

/// Generalized norm of d over [t0, t], trapezoid integral and supremum over
/// the sample grid t0, t0 + grid, ..., t. Throws std::domain_error if t < t0.
double s_norm(const Disturbance& d, double t0, double t,
              const GeneralizedNormParams& p, double grid);

/// Running S[d, 0, t_k] at each of the given increasing sample times.
std::vector<double> s_norm_profile(const Disturbance& d,
                                   const std::vector<double>& times,
                                   const GeneralizedNormParams& p);

/// Thresholds 0 = Delta_0 < Delta_1 < ... < Delta_M, with Delta_{M+1} = +inf.
class Partition {
 public:
  explicit Partition(std::vector<double> thresholds);

  int top() const noexcept { return static_cast<int>(thresholds_.size()) - 1; }
  double lower(int q) const { return thresholds_.at(static_cast<std::size_t>(q)); }
  /// Delta_{q+1}; +inf for the top interval.
  double upper(int q) const;
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }

 private:
  std::vector<double> thresholds_;
};

/// Unique q with v in [Delta_q, Delta_{q+1}). Throws std::domain_error for
/// negative or non-finite v.
int interval_index(double v, const Partition& partition);

/// Dwell-time function T_q over the output norm.
using DwellFn = std::function<double(double)>;

struct SupervisorConfig {
  Partition partition{{0.0}};
  /// theta_q: family index active on interval q.
  std::vector<int> mode_assignment;
  /// chi_q, the upper end of the switch band [Delta_q, chi_q).
  std::vector<double> chi;
  /// T_q per interval; may be empty for the hysteresis supervisor.
  std::vector<DwellFn> dwell;
  double t_min = 0.0;
  /// T_M is evaluated at min(v, top_dwell_cap * Delta_M).
  double top_dwell_cap = 10.0;
  /// Allows T_0 == 0 (average dwell-time variant with N_0 = 2).
  bool zero_bottom_dwell = false;

  int top() const noexcept { return partition.top(); }
  /// T_q at output norm v, with v clamped into the domain of T_q.
  double dwell_time(int q, double v) const;
};

/// chi_q = Delta_q + factor * (Delta_{q+1} - Delta_q) below the top interval
/// and 2 * Delta_M on top.
std::vector<double> default_chi(const Partition& partition, double factor = 0.8);

/// v in [Delta_k, chi_k).
bool in_switch_band(double v, int k, const SupervisorConfig& config);

/// Number of events in the half-open window [t1, t2).
std::size_t count_switches(const SwitchLog& log, double t1, double t2);

/// N_[t1, t2) <= n0 + (t2 - t1) / tau_d for the single window [t1, t2).
bool average_dwell(const SwitchLog& log, double t1, double t2, double tau_d,
                   int n0);

/// The average dwell-time inequality over every window; the binding windows
/// start at one event and end just after another.
bool has_average_dwell(const SwitchLog& log, double tau_d, int n0);

struct Violation {
  int interval;
  std::string what;
};

/// Structural checks that need no KL data: mode indices in range,
/// Delta_q < chi_q < Delta_{q+1}, and inf T_q >= t_min > 0 when dwell
/// functions are present.
std::vector<Violation> validate_structure(const ModeFamily& family,
                                          const SupervisorConfig& config);

/// validate_structure plus beta_{theta_q}(Delta_{q+1}, 0) <= Delta_{q+2}.
/// betas is indexed by family mode.
std::vector<Violation> validate_config(const ModeFamily& family,
                                       const SupervisorConfig& config,
                                       const std::vector<KLExp>& betas);

}  // namespace switchkit
