#include "switchkit/experiment.hpp"

#include "switchkit/bounds.hpp"
#include "switchkit/lorenz.hpp"
#include "switchkit/pendulum.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace switchkit {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(what + " must be a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument(what + " has ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Disturbance make_disturbance(const DisturbanceSpec& spec, int dim) {
  if (spec.type == "none") return zero_disturbance(dim);
  if (spec.type == "sine") {
    const double amp = spec.amplitude;
    const double freq = spec.frequency;
    return [amp, freq, dim](double t) { return Vector::Constant(dim, amp * std::sin(freq * t)); };
  }
  if (spec.type == "lorenz") {
    if (dim != 3) throw std::invalid_argument("lorenz disturbance is 3-dimensional");
    return lorenz_disturbance(true);
  }
  if (spec.type == "pendulum") {
    if (dim != 1) throw std::invalid_argument("pendulum disturbance is scalar");
    PendulumObserverSetup setup;
    if (spec.amplitude != 0.0) setup.disturbance_amplitude = spec.amplitude;
    if (spec.frequency != 0.0) setup.disturbance_frequency = spec.frequency;
    return pendulum_disturbance(setup);
  }
  throw std::invalid_argument("unknown disturbance type '" + spec.type + "'");
}

ModeFamily linear_family(const ExperimentConfig& cfg) {
  if (cfg.modes.empty()) throw std::invalid_argument("custom scenario needs \"modes\"");
  const auto n = cfg.modes.front().a.rows();
  const auto m = cfg.modes.front().b.cols();
  ModeFamily family;
  family.state_dim = static_cast<int>(n);
  family.disturbance_dim = static_cast<int>(m);
  const Matrix c = cfg.output.size() == 0 ? Matrix(Matrix::Identity(n, n)) : cfg.output;
  if (c.cols() != n) throw std::invalid_argument("output matrix has the wrong width");
  family.output_dim = static_cast<int>(c.rows());
  family.output_map = [c](const Vector& x) -> Vector { return c * x; };
  for (const auto& spec : cfg.modes) {
    if (spec.a.rows() != n || spec.a.cols() != n || spec.b.rows() != n || spec.b.cols() != m) {
      throw std::invalid_argument("mode '" + spec.name + "' has inconsistent dimensions");
    }
    const Matrix a = spec.a;
    const Matrix b = spec.b;
    family.modes.push_back(
        {spec.name, [a, b](double, const Vector& x, const Vector& d) -> Vector {
           return a * x + b * d;
         }, nullptr});
  }
  return family;
}

}  // namespace

ExperimentConfig parse_experiment(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.scenario = doc.value("scenario", cfg.scenario);
    if (cfg.scenario != "custom" && cfg.scenario != "pendulum" && cfg.scenario != "lorenz") {
      throw std::invalid_argument("unknown scenario '" + cfg.scenario + "'");
    }
    const std::string default_kind = cfg.scenario == "lorenz" ? "hysteresis" : "dwell";
    cfg.supervisor = supervisor_kind_from_string(doc.value("supervisor", default_kind));
    if (cfg.scenario == "pendulum") cfg.integrator.t_end = 20.0;
    if (cfg.scenario == "lorenz") cfg.integrator.t_end = 30.0;
    if (doc.contains("integrator")) {
      const json& j = doc.at("integrator");
      cfg.integrator.step_size = j.value("step_size", cfg.integrator.step_size);
      cfg.integrator.event_tolerance = j.value("event_tolerance", cfg.integrator.event_tolerance);
      cfg.integrator.t_end = j.value("t_end", cfg.integrator.t_end);
    }
    cfg.integrator.validate();
    cfg.partition = doc.value("partition", cfg.partition);
    cfg.mode_assignment = doc.value("mode_assignment", cfg.mode_assignment);
    cfg.chi = doc.value("chi", cfg.chi);
    cfg.chi_factor = doc.value("chi_factor", cfg.chi_factor);
    if (doc.contains("dwell")) {
      const json& j = doc.at("dwell");
      cfg.dwell = j.is_number() ? std::vector<double>{j.get<double>()} : j.get<std::vector<double>>();
    }
    cfg.zero_bottom_dwell = doc.value("zero_bottom_dwell", false);
    if (doc.contains("disturbance")) {
      const json& j = doc.at("disturbance");
      DisturbanceSpec spec;
      spec.type = j.value("type", spec.type);
      spec.amplitude = j.value("amplitude", spec.amplitude);
      spec.frequency = j.value("frequency", spec.frequency);
      cfg.disturbance = spec;
    }
    if (doc.contains("modes")) {
      for (const json& m : doc.at("modes")) {
        LinearModeSpec spec;
        spec.name = m.value("name", "mode" + std::to_string(cfg.modes.size()));
        spec.a = matrix_from_json(m.at("A"), spec.name + ".A");
        spec.b = m.contains("B") ? matrix_from_json(m.at("B"), spec.name + ".B")
                                 : Matrix::Zero(spec.a.rows(), 1);
        cfg.modes.push_back(std::move(spec));
      }
    }
    if (doc.contains("output")) cfg.output = matrix_from_json(doc.at("output"), "output");
    cfg.x0 = doc.value("x0", cfg.x0);
    if (doc.contains("betas")) {
      for (const json& b : doc.at("betas")) {
        KLExp beta{b.at("a").get<double>(), b.at("b").get<double>()};
        beta.validate();
        cfg.betas.push_back(beta);
      }
    }
    if (doc.contains("gamma")) cfg.gamma = doc.at("gamma").get<double>();
    cfg.out = doc.value("out", cfg.out);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return parse_experiment(doc);
}

BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
  BuiltExperiment out;
  std::vector<double> partition = cfg.partition;
  std::vector<int> assignment = cfg.mode_assignment;
  std::vector<double> chi = cfg.chi;
  std::vector<double> dwell = cfg.dwell;
  DisturbanceSpec dist = cfg.disturbance.value_or(DisturbanceSpec{});

  if (cfg.scenario == "pendulum") {
    PendulumObserverSetup setup;
    out.family = pendulum_family(setup);
    out.betas = pendulum_betas(setup);
    out.gamma = pendulum_gamma(setup);
    out.has_bounds = true;
    if (partition.empty()) partition = setup.partition;
    if (assignment.empty()) assignment = setup.mode_assignment;
    if (chi.empty() && cfg.partition.empty()) chi = setup.chi;
    if (dwell.empty()) dwell = {setup.dwell};
    if (!cfg.disturbance) dist.type = "pendulum";
    out.x0 = pendulum_initial_state(setup);
  } else if (cfg.scenario == "lorenz") {
    LorenzSetup setup;
    out.family = lorenz_family(setup.params);
    if (partition.empty()) partition = setup.partition;
    if (assignment.empty()) assignment = setup.mode_assignment;
    out.x0 = lorenz_initial_state(LorenzInitial::large);
  } else {
    out.family = linear_family(cfg);
  }
  if (!cfg.x0.empty()) out.x0 = Eigen::Map<const Vector>(cfg.x0.data(), static_cast<Eigen::Index>(cfg.x0.size()));
  if (out.x0.size() != out.family.state_dim) {
    throw std::invalid_argument("x0 must have " + std::to_string(out.family.state_dim) + " entries");
  }
  if (!cfg.betas.empty()) {
    out.betas = cfg.betas;
    out.has_bounds = cfg.gamma.has_value() || out.has_bounds;
  }
  if (cfg.gamma) out.gamma = GainFn{*cfg.gamma};
  if (out.has_bounds && out.betas.size() != static_cast<std::size_t>(out.family.size())) {
    throw std::invalid_argument("betas must list one estimate per mode");
  }

  if (partition.empty()) throw std::invalid_argument("\"partition\" is required");
  out.config.partition = Partition(partition);
  out.config.mode_assignment = assignment;
  out.config.chi = chi.empty() ? default_chi(out.config.partition, cfg.chi_factor) : chi;
  if (cfg.supervisor == SupervisorKind::dwell) {
    if (dwell.empty()) throw std::invalid_argument("dwell supervisor needs \"dwell\"");
    if (dwell.size() == 1) dwell.assign(partition.size(), dwell.front());
    if (dwell.size() != partition.size()) {
      throw std::invalid_argument("\"dwell\" needs one value or one per interval");
    }
    for (const double v : dwell) out.config.dwell.push_back(constant_dwell(v));
    out.config.zero_bottom_dwell = cfg.zero_bottom_dwell;
    double t_min = -1.0;
    for (std::size_t q = 0; q < dwell.size(); ++q) {
      if (q == 0 && cfg.zero_bottom_dwell) continue;
      t_min = t_min < 0.0 ? dwell[q] : std::min(t_min, dwell[q]);
    }
    out.config.t_min = t_min;
  }
  out.disturbance = make_disturbance(dist, out.family.disturbance_dim);

  json resolved;
  resolved["scenario"] = cfg.scenario;
  resolved["supervisor"] = std::string(to_string(cfg.supervisor));
  resolved["integrator"] = {{"step_size", cfg.integrator.step_size},
                            {"event_tolerance", cfg.integrator.event_tolerance},
                            {"t_end", cfg.integrator.t_end}};
  resolved["partition"] = partition;
  resolved["mode_assignment"] = assignment;
  resolved["chi"] = out.config.chi;
  resolved["chi_factor"] = cfg.chi_factor;
  resolved["dwell"] = dwell;
  resolved["zero_bottom_dwell"] = cfg.zero_bottom_dwell;
  resolved["disturbance"] = {{"type", dist.type}, {"amplitude", dist.amplitude},
                             {"frequency", dist.frequency}};
  resolved["x0"] = std::vector<double>(out.x0.data(), out.x0.data() + out.x0.size());
  if (!cfg.modes.empty()) {
    json modes = json::array();
    for (const auto& m : cfg.modes) {
      modes.push_back({{"name", m.name}, {"A", matrix_to_json(m.a)}, {"B", matrix_to_json(m.b)}});
    }
    resolved["modes"] = modes;
  }
  if (out.has_bounds) {
    json betas = json::array();
    for (const auto& b : out.betas) betas.push_back({{"a", b.a}, {"b", b.b}});
    resolved["betas"] = betas;
    resolved["gamma"] = out.gamma.c;
  }
  out.resolved = resolved;
  return out;
}

}  // namespace switchkit
