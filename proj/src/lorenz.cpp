#include "switchkit/lorenz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace switchkit {

void LorenzParams::validate() const {
  if (!(sigma > 0.0) || !(rho > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("Lorenz parameters must be positive");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  // The linear error matrix is Hurwitz exactly when alpha > rho - 1.
  if (!(alpha > rho - 1.0)) throw std::invalid_argument("alpha must exceed rho - 1");
}

Vector lorenz_control(const LorenzParams& p, LorenzControl c, const Vector& s) {
  Vector u = Vector::Zero(2);
  const double e1 = s(0) - s(3);
  switch (c) {
    case LorenzControl::cancel:
      // Removes the cross terms of the error system so that V = |e|^2 / 2
      // decreases at least like lambda * sigma * e1^2 + beta * e3^2.
      u(0) = (p.rho + p.sigma - 2.0 * std::sqrt((1.0 - p.lambda) * p.sigma) - s(5)) * e1;
      u(1) = s(4) * e1;
      break;
    case LorenzControl::linear:
      u(0) = p.alpha * e1;
      break;
    case LorenzControl::none:
      break;
  }
  return u;
}

Vector lorenz_coupled_rhs(const LorenzParams& p, LorenzControl c, double /*t*/,
                          const Vector& s, const Vector& d) {
  const Vector u = lorenz_control(p, c, s);
  Vector out(6);
  out(0) = p.sigma * (s(1) - s(0)) + d(0);
  out(1) = s(0) * (p.rho - s(2)) - s(1) + d(1);
  out(2) = s(0) * s(1) - p.beta * s(2) + d(2);
  out(3) = p.sigma * (s(4) - s(3));
  out(4) = s(3) * (p.rho - s(5)) - s(4) + u(0);
  out(5) = s(3) * s(4) - p.beta * s(5) + u(1);
  return out;
}

Matrix linear_error_matrix(const LorenzParams& p) {
  Matrix a(3, 3);
  a << -p.sigma, p.sigma, 0.0,
       p.rho - p.alpha, -1.0, 0.0,
       0.0, 0.0, -p.beta;
  return a;
}

ModeFamily lorenz_family(const LorenzParams& p) {
  p.validate();
  ModeFamily family;
  family.state_dim = 6;
  family.disturbance_dim = 3;
  family.output_dim = 3;
  family.output_map = [](const Vector& s) -> Vector { return s.head(3) - s.tail(3); };
  for (const auto& [c, name] : {std::pair{LorenzControl::cancel, "cancel"},
                                std::pair{LorenzControl::linear, "linear"},
                                std::pair{LorenzControl::none, "none"}}) {
    family.modes.push_back(
        {name,
         [p, c = c](double t, const Vector& s, const Vector& d) {
           return lorenz_coupled_rhs(p, c, t, s, d);
         },
         [p, c = c](double, const Vector& s) { return lorenz_control(p, c, s); }});
  }
  return family;
}

SupervisorConfig lorenz_config(const LorenzSetup& setup) {
  SupervisorConfig config;
  config.partition = Partition(setup.partition);
  config.mode_assignment = setup.mode_assignment;
  config.chi = default_chi(config.partition, setup.chi_factor);
  return config;
}

Vector lorenz_initial_state(LorenzInitial ic) {
  const double k = ic == LorenzInitial::small ? 1.0 : 10.0;
  Vector s(6);
  s << 0.1, 0.0, 0.0, -k, k, -k;
  return s;
}

Disturbance lorenz_disturbance(bool disturbed) {
  if (!disturbed) return zero_disturbance(3);
  return [](double t) {
    Vector d(3);
    d << 5.0 * std::sin(0.5 * t), -5.0 * std::cos(0.1 * t), 2.5 * std::sin(t);
    return d;
  };
}

std::string_view to_string(LorenzStrategy s) {
  switch (s) {
    case LorenzStrategy::cancel: return "cancel";
    case LorenzStrategy::linear: return "linear";
    case LorenzStrategy::none: return "none";
    case LorenzStrategy::supervisor: return "supervisor";
  }
  return "?";
}

LorenzStrategy lorenz_strategy_from_string(std::string_view name) {
  for (const auto s : {LorenzStrategy::cancel, LorenzStrategy::linear, LorenzStrategy::none,
                       LorenzStrategy::supervisor}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown control strategy '" + std::string(name) + "'");
}

std::string_view to_string(LorenzInitial ic) {
  return ic == LorenzInitial::small ? "small" : "large";
}

LorenzCell run_lorenz_cell(const LorenzSetup& setup, LorenzStrategy strategy,
                           LorenzInitial ic, bool disturbed, const IntegratorConfig& cfg) {
  IntegratorConfig run_cfg = cfg;
  run_cfg.t_end = setup.horizon;
  const ModeFamily family = lorenz_family(setup.params);
  const Vector s0 = lorenz_initial_state(ic);
  const Disturbance d = lorenz_disturbance(disturbed);

  LorenzCell cell;
  cell.strategy = strategy;
  cell.initial = ic;
  cell.disturbed = disturbed;
  if (strategy == LorenzStrategy::supervisor) {
    cell.result = simulate(family, SupervisorKind::hysteresis, lorenz_config(setup), s0, d,
                           run_cfg);
  } else {
    cell.result = simulate_mode(family, static_cast<int>(strategy), s0, d, run_cfg);
  }
  cell.perf = performance(cell.result.trajectory, setup.horizon);
  cell.switches = cell.result.log.events.size();
  return cell;
}

}  // namespace switchkit
