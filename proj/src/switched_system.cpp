#include "switchkit/switched_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace switchkit {

Disturbance zero_disturbance(int dim) {
  return [dim](double) { return Vector::Zero(dim); };
}

void ModeFamily::validate() const {
  if (modes.empty()) throw std::invalid_argument("mode family is empty");
  if (state_dim <= 0 || output_dim <= 0 || disturbance_dim < 0) {
    throw std::invalid_argument("mode family dimensions must be positive");
  }
  if (!output_map) throw std::invalid_argument("mode family has no output map");
  const Vector x0 = Vector::Zero(state_dim);
  const Vector d0 = Vector::Zero(disturbance_dim);
  const Vector y0 = output_map(x0);
  if (y0.size() != output_dim || !y0.allFinite()) {
    throw std::invalid_argument("output map must be finite at the origin");
  }
  for (const Mode& m : modes) {
    if (!m.rhs) throw std::invalid_argument("mode '" + m.name + "' has no rhs");
    const Vector dx = m.rhs(0.0, x0, d0);
    if (dx.size() != state_dim || !dx.allFinite()) {
      throw std::invalid_argument("mode '" + m.name +
                                  "' is not finite at the origin");
    }
  }
}

void GeneralizedNormParams::validate() const {
  if (a < 0.0 || b < 0.0 || !(a + b > 0.0)) {
    throw std::invalid_argument("norm weights must be >= 0 with a + b > 0");
  }
  if (!omega) throw std::invalid_argument("norm needs a class-K function");
  if (omega(0.0) != 0.0) throw std::invalid_argument("omega(0) must be 0");
  double prev = 0.0;
  for (int k = 1; k <= 64; ++k) {
    const double s = 0.125 * k;
    const double w = omega(s);
    if (!(w > prev)) throw std::invalid_argument("omega must be increasing");
    prev = w;
  }
}

namespace {

// Accumulates the trapezoid integral and the running supremum sample by
// sample.
class NormAccumulator {
 public:
  NormAccumulator(const GeneralizedNormParams& p, double t0, double d0)
      : p_(p), t_(t0), w_(p.omega(d0)), sup_(d0) {}

  void add(double t, double dnorm) {
    const double w = p_.omega(dnorm);
    integral_ += 0.5 * (w + w_) * (t - t_);
    t_ = t;
    w_ = w;
    sup_ = std::max(sup_, dnorm);
  }

  double value() const {
    const double v = p_.a * integral_ + p_.b * sup_;
    if (!std::isfinite(v)) {
      throw std::domain_error("disturbance norm is not finite");
    }
    return v;
  }

 private:
  const GeneralizedNormParams& p_;
  double t_;
  double w_;
  double integral_ = 0.0;
  double sup_;
};

}  // namespace

double s_norm(const Disturbance& d, double t0, double t,
              const GeneralizedNormParams& p, double grid) {
  if (t < t0) throw std::domain_error("s_norm: t < t0");
  if (!(grid > 0.0)) throw std::domain_error("s_norm: grid must be positive");
  NormAccumulator acc(p, t0, d(t0).norm());
  const auto n = static_cast<long long>(std::floor((t - t0) / grid));
  for (long long k = 1; k <= n; ++k) {
    const double tk = t0 + static_cast<double>(k) * grid;
    acc.add(tk, d(tk).norm());
  }
  const double last = t0 + static_cast<double>(n) * grid;
  if (t > last) acc.add(t, d(t).norm());
  return acc.value();
}

std::vector<double> s_norm_profile(const Disturbance& d,
                                   const std::vector<double>& times,
                                   const GeneralizedNormParams& p) {
  std::vector<double> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  NormAccumulator acc(p, times.front(), d(times.front()).norm());
  out.push_back(acc.value());
  for (std::size_t k = 1; k < times.size(); ++k) {
    acc.add(times[k], d(times[k]).norm());
    out.push_back(acc.value());
  }
  return out;
}

Partition::Partition(std::vector<double> thresholds)
    : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty() || thresholds_.front() != 0.0) {
    throw std::invalid_argument("partition must start at 0");
  }
  for (std::size_t k = 1; k < thresholds_.size(); ++k) {
    if (!(thresholds_[k] > thresholds_[k - 1]) || !std::isfinite(thresholds_[k])) {
      throw std::invalid_argument("partition must be strictly increasing");
    }
  }
}

double Partition::upper(int q) const {
  if (q < 0 || q > top()) throw std::out_of_range("interval index");
  if (q == top()) return std::numeric_limits<double>::infinity();
  return thresholds_[static_cast<std::size_t>(q) + 1];
}

int interval_index(double v, const Partition& partition) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::domain_error("interval_index: output norm must be finite and >= 0");
  }
  const auto& th = partition.thresholds();
  const auto it = std::upper_bound(th.begin(), th.end(), v);
  return static_cast<int>(it - th.begin()) - 1;
}

double SupervisorConfig::dwell_time(int q, double v) const {
  if (q < 0 || q > top()) throw std::out_of_range("interval index");
  if (dwell.empty()) return 0.0;
  if (q == 0 && zero_bottom_dwell) return 0.0;
  const double lo = partition.lower(q);
  double s = std::max(v, lo);
  if (q == top()) {
    s = std::min(s, top_dwell_cap * lo);
  } else {
    // Largest double strictly inside the half-open domain.
    s = std::min(s, std::nextafter(partition.upper(q), lo));
  }
  return dwell.at(static_cast<std::size_t>(q))(s);
}

std::vector<double> default_chi(const Partition& partition, double factor) {
  if (!(factor > 0.0 && factor < 1.0)) {
    throw std::invalid_argument("chi factor must lie in (0, 1)");
  }
  std::vector<double> chi;
  const int top = partition.top();
  for (int q = 0; q < top; ++q) {
    const double lo = partition.lower(q);
    chi.push_back(lo + factor * (partition.upper(q) - lo));
  }
  const double top_lo = partition.lower(top);
  chi.push_back(top == 0 ? 1.0 : 2.0 * top_lo);
  return chi;
}

bool in_switch_band(double v, int k, const SupervisorConfig& config) {
  return v >= config.partition.lower(k) &&
         v < config.chi.at(static_cast<std::size_t>(k));
}

std::size_t count_switches(const SwitchLog& log, double t1, double t2) {
  return static_cast<std::size_t>(
      std::count_if(log.events.begin(), log.events.end(),
                    [&](const SwitchEvent& e) { return e.time >= t1 && e.time < t2; }));
}

bool average_dwell(const SwitchLog& log, double t1, double t2, double tau_d,
                   int n0) {
  const double n = static_cast<double>(count_switches(log, t1, t2));
  return n <= static_cast<double>(n0) + (t2 - t1) / tau_d;
}

bool has_average_dwell(const SwitchLog& log, double tau_d, int n0) {
  const auto& ev = log.events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i; j < ev.size(); ++j) {
      const double n = static_cast<double>(j - i + 1);
      if (n > static_cast<double>(n0) + (ev[j].time - ev[i].time) / tau_d) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::string describe(const char* head, int q, double lhs, const char* op,
                     double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << head << " at interval " << q << ": " << lhs << ' ' << op << ' ' << rhs;
  return os.str();
}

}  // namespace

std::vector<Violation> validate_structure(const ModeFamily& family,
                                          const SupervisorConfig& config) {
  std::vector<Violation> out;
  const int top = config.top();
  const auto intervals = static_cast<std::size_t>(top) + 1;
  if (config.mode_assignment.size() != intervals) {
    out.push_back({-1, "mode assignment needs one entry per interval"});
    return out;
  }
  if (config.chi.size() != intervals) {
    out.push_back({-1, "chi needs one entry per interval"});
    return out;
  }
  for (int q = 0; q <= top; ++q) {
    const int theta = config.mode_assignment[static_cast<std::size_t>(q)];
    if (theta < 0 || theta >= family.size()) {
      out.push_back({q, "mode index out of range"});
    }
    const double lo = config.partition.lower(q);
    const double hi = config.partition.upper(q);
    const double chi = config.chi[static_cast<std::size_t>(q)];
    if (!(chi > lo)) out.push_back({q, describe("switch band empty", q, chi, "<=", lo)});
    if (!(chi < hi)) out.push_back({q, describe("switch band leaves interval", q, chi, ">=", hi)});
  }
  if (config.dwell.empty()) return out;
  if (config.dwell.size() != intervals) {
    out.push_back({-1, "dwell needs one function per interval"});
    return out;
  }
  if (!(config.t_min > 0.0)) out.push_back({-1, "t_min must be positive"});
  constexpr int kSamples = 257;
  for (int q = 0; q <= top; ++q) {
    if (q == 0 && config.zero_bottom_dwell) continue;
    const double lo = config.partition.lower(q);
    const double hi = q == top ? config.top_dwell_cap * lo : config.partition.upper(q);
    double inf = std::numeric_limits<double>::infinity();
    double sup = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const double s = lo + (hi - lo) * k / (kSamples - 1);
      const double T = config.dwell_time(q, s);
      if (!std::isfinite(T)) {
        inf = -1.0;
        break;
      }
      inf = std::min(inf, T);
      sup = std::max(sup, T);
    }
    if (inf < 0.0) {
      out.push_back({q, "dwell time is not finite"});
    } else if (inf < config.t_min) {
      out.push_back({q, describe("dwell time below t_min", q, inf, "<", config.t_min)});
    }
  }
  return out;
}

std::vector<Violation> validate_config(const ModeFamily& family,
                                       const SupervisorConfig& config,
                                       const std::vector<KLExp>& betas) {
  std::vector<Violation> out = validate_structure(family, config);
  const int top = config.top();
  for (int q = 0; q + 1 < top; ++q) {
    const int theta = config.mode_assignment.at(static_cast<std::size_t>(q));
    if (theta < 0 || static_cast<std::size_t>(theta) >= betas.size()) {
      out.push_back({q, "no KL estimate for the assigned mode"});
      continue;
    }
    const double overshoot = betas[static_cast<std::size_t>(theta)].at_zero(
        config.partition.upper(q));
    const double next = config.partition.upper(q + 1);
    if (overshoot > next) {
      out.push_back({q, describe("overshoot exceeds next threshold", q, overshoot, ">", next)});
    }
  }
  return out;
}

}  // namespace switchkit
