#include "switchkit/bounds.hpp"

#include "switchkit/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace switchkit {

void KLExp::validate() const {
  if (!(a >= 1.0) || !std::isfinite(a)) {
    throw std::invalid_argument("KL overshoot coefficient must be >= 1");
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("KL decay rate must be positive");
  }
}

double chi(const KLExp& beta, double s) { return s / beta.a; }

double dwell_from_beta(const KLExp& beta, double s, double target, double margin) {
  const double room = target - margin;
  if (!(room > 0.0)) {
    throw InfeasibleError("dwell target does not exceed the disturbance margin");
  }
  const double start = beta.at_zero(s);
  if (start <= room) return 0.0;
  return std::log(start / room) / beta.b;
}

double time_to_level(const KLExp& beta, double s, double level) {
  if (!(level > 0.0)) throw std::domain_error("time_to_level: level must be positive");
  const double start = beta.at_zero(s);
  if (start <= level) return 0.0;
  return std::log(start / level) / beta.b;
}

std::vector<ThresholdSample> threshold_curve(const KLExp& upper_mode,
                                             const KLExp& lower_mode, double s,
                                             double eps, double grid) {
  if (!(eps > 0.0) || !(eps < s)) {
    throw std::domain_error("threshold range needs 0 < eps < s");
  }
  if (!(grid > 0.0)) throw std::domain_error("threshold grid must be positive");
  std::vector<ThresholdSample> out;
  const double limit = s * (1.0 + 1e-12);
  for (long long k = 1;; ++k) {
    const double level = eps + static_cast<double>(k) * grid;
    if (level > limit) break;
    const double threshold = std::min(level, s);
    out.push_back({threshold, time_to_level(upper_mode, s, threshold) +
                                  time_to_level(lower_mode, threshold, eps)});
  }
  return out;
}

ThresholdChoice optimal_threshold(const KLExp& upper_mode, const KLExp& lower_mode,
                                  double s, double eps, double grid) {
  const auto curve = threshold_curve(upper_mode, lower_mode, s, eps, grid);
  if (curve.empty()) throw InfeasibleError("no grid point in (eps, s]");
  ThresholdChoice best{curve.front().threshold, curve.front().total_time};
  for (const auto& p : curve) {
    const double slack = 1e-12 * std::max(1.0, std::abs(best.total_time));
    if (p.total_time < best.total_time - slack) best = {p.threshold, p.total_time};
  }
  return best;
}

DwellFn constant_dwell(double value) {
  return [value](double) { return value; };
}

std::vector<DwellFn> level_dwell_functions(const Partition& partition,
                                           const std::vector<int>& mode_assignment,
                                           const std::vector<KLExp>& betas,
                                           const std::vector<double>& margins) {
  const int top = partition.top();
  if (mode_assignment.size() != static_cast<std::size_t>(top) + 1) {
    throw std::invalid_argument("mode assignment needs one entry per interval");
  }
  if (top < 1) throw std::invalid_argument("level dwell needs at least two intervals");
  const auto beta_of = [&](int q) -> const KLExp& {
    return betas.at(static_cast<std::size_t>(mode_assignment[static_cast<std::size_t>(q)]));
  };
  const auto margin_of = [&](int q) {
    return margins.empty() ? 0.0 : margins.at(static_cast<std::size_t>(q));
  };

  std::vector<DwellFn> out;
  const KLExp bottom = beta_of(0);
  const double d1 = partition.upper(0);
  const double t0 = dwell_from_beta(bottom, d1, 0.5 * bottom.at_zero(d1), margin_of(0));
  out.push_back(constant_dwell(t0));
  for (int q = 1; q <= top; ++q) {
    const KLExp beta = beta_of(q);
    const double target = chi(beta_of(q - 1), partition.lower(q));
    const double margin = margin_of(q);
    if (!(target > margin)) {
      throw InfeasibleError("dwell target does not exceed the disturbance margin");
    }
    out.push_back([beta, target, margin](double s) {
      return dwell_from_beta(beta, s, target, margin);
    });
  }
  return out;
}

std::vector<double> chi_from_betas(const Partition& partition,
                                   const std::vector<int>& mode_assignment,
                                   const std::vector<KLExp>& betas,
                                   double top_factor) {
  const int top = partition.top();
  std::vector<double> out;
  for (int q = 0; q < top; ++q) {
    const KLExp& beta =
        betas.at(static_cast<std::size_t>(mode_assignment.at(static_cast<std::size_t>(q))));
    out.push_back(chi(beta, partition.upper(q)));
  }
  out.push_back(top_factor * partition.lower(top));
  return out;
}

double dwell_infimum(const SupervisorConfig& config) {
  if (config.dwell.empty()) return 0.0;
  constexpr int kSamples = 257;
  double inf = std::numeric_limits<double>::infinity();
  for (int q = 0; q <= config.top(); ++q) {
    if (q == 0 && config.zero_bottom_dwell) continue;
    const double lo = config.partition.lower(q);
    const double hi =
        q == config.top() ? config.top_dwell_cap * lo : config.partition.upper(q);
    for (int k = 0; k < kSamples; ++k) {
      inf = std::min(inf, config.dwell_time(q, lo + (hi - lo) * k / (kSamples - 1)));
    }
  }
  return inf;
}

double convergence_time_bound(const SupervisorConfig& config, int r,
                              ConvergenceVariant variant) {
  const int top = config.top();
  if (r < 0 || r > top) throw std::out_of_range("initial interval");
  // T_k at the right end of its domain; dwell_time clamps the top interval.
  const auto at_upper = [&](int k, double v) { return config.dwell_time(k, v); };
  double total = 0.0;
  for (int k = 0; k <= r; ++k) total += at_upper(k, config.partition.upper(k));
  if (variant == ConvergenceVariant::hysteresis_supervisor) {
    const double level = config.partition.upper(r);
    const int next = std::min(r + 1, top);
    total += at_upper(r, level) + at_upper(next, level);
  }
  return total;
}

namespace {

double sup_overshoot(const std::vector<KLExp>& betas) {
  if (betas.empty()) throw std::invalid_argument("monitor needs KL estimates");
  double a = 0.0;
  for (const auto& b : betas) a = std::max(a, b.a);
  return a;
}

BoundReport run_monitor(const Trajectory& traj, const Disturbance& d,
                        double transient, const std::function<double(double)>& gain,
                        const GeneralizedNormParams& norm) {
  BoundReport report{{}, std::numeric_limits<double>::infinity()};
  const auto s = s_norm_profile(d, traj.times, norm);
  report.samples.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double bound = transient + gain(s[k]);
    const double margin = bound - traj.output_norms[k];
    report.samples.push_back({traj.times[k], traj.output_norms[k], bound, margin});
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  return report;
}

}  // namespace

BoundReport theorem1_monitor(const Trajectory& traj, const Disturbance& d,
                             const std::vector<KLExp>& betas, const GainFn& gamma,
                             const SupervisorConfig& config,
                             const GeneralizedNormParams& norm) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const double top_level = config.partition.lower(config.top());
  const double start = std::max(2.0 * top_level, traj.output_norms.front());
  const double transient = sup_overshoot(betas) * start;
  const KLExp& top_beta = betas.at(
      static_cast<std::size_t>(config.mode_assignment.at(static_cast<std::size_t>(config.top()))));
  const auto gain = [&](double s) { return gamma(s) + top_beta.at_zero(2.0 * gamma(s)); };
  return run_monitor(traj, d, transient, gain, norm);
}

BoundReport theorem2_monitor(const Trajectory& traj, const Disturbance& d,
                             const std::vector<KLExp>& betas, const GainFn& gamma,
                             const SupervisorConfig& config,
                             const GeneralizedNormParams& norm) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const double top_level = config.partition.lower(config.top());
  const double start = std::max(top_level, traj.output_norms.front());
  const double transient = sup_overshoot(betas) * start;
  return run_monitor(traj, d, transient, [&](double s) { return gamma(s); }, norm);
}

SiiosEstimate lure_siios_estimate(const Matrix& P, double alpha, const Matrix& B) {
  if (P.rows() != P.cols() || P.rows() == 0) {
    throw std::invalid_argument("P must be square");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if ((P - P.transpose()).norm() > 1e-10 * std::max(1.0, P.norm())) {
    throw std::invalid_argument("P must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(P);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) throw std::invalid_argument("P must be positive definite");
  const double p_sigma = Eigen::JacobiSVD<Matrix>(P).singularValues()(0);
  const double b_sigma =
      B.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(B).singularValues()(0);
  const double rho = p_sigma / (std::sqrt(alpha) * lmin);
  return {KLExp{std::sqrt(2.0 * lmax / lmin), 0.25 * alpha}, GainFn{2.0 * rho * b_sigma},
          rho};
}

Matrix solve_lyapunov_small(const Matrix& G, double alpha) {
  const auto n = G.rows();
  if (n != G.cols() || n == 0 || n > 4) {
    throw std::invalid_argument("solve_lyapunov_small handles square n <= 4");
  }
  const Eigen::EigenSolver<Matrix> eig(G, false);
  if (eig.info() != Eigen::Success) throw InfeasibleError("eigenvalues failed");
  if (eig.eigenvalues().real().maxCoeff() >= -0.5 * alpha) {
    throw InfeasibleError("G has an eigenvalue with real part >= -alpha/2");
  }
  const Matrix shifted = G + 0.5 * alpha * Matrix::Identity(n, n);
  const Matrix at = shifted.transpose();
  // vec(A^T P + P A) = (I kron A^T + A^T kron I) vec(P), column-major vec.
  Matrix system = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        system(j * n + i, j * n + k) += at(i, k);
        system(j * n + i, k * n + i) += at(j, k);
      }
    }
  }
  Vector rhs = Vector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i * n + i) = -1.0;
  const Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible()) throw InfeasibleError("singular Lyapunov system");
  const Vector vec_p = lu.solve(rhs);
  Matrix P = Eigen::Map<const Matrix>(vec_p.data(), n, n);
  P = 0.5 * (P + P.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Matrix> check(P);
  if (!(check.eigenvalues().minCoeff() > 0.0)) {
    throw InfeasibleError("Lyapunov solution is not positive definite");
  }
  return P;
}

bool is_hurwitz(const Matrix& A) {
  const Eigen::EigenSolver<Matrix> eig(A, false);
  return eig.eigenvalues().real().maxCoeff() < 0.0;
}

}  // namespace switchkit
