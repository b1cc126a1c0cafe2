#include "switchkit/cli.hpp"
#include "switchkit/csv.hpp"
#include "switchkit/experiment.hpp"
#include "switchkit/simulate.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace switchkit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / ("switchkit_" + tag + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

// ------------------------------------------------------------------- CSV

TEST(CsvNumberTest, RoundTripsExactly) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ASSERT_EQ(parse_double(format_double(v)), v);
    ++checked;
  }
  for (const double v : {0.0, -0.0, 0.1, 1.0 / 3.0, 1e-310, std::numeric_limits<double>::max(),
                         std::numeric_limits<double>::denorm_min()}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
}

TEST(CsvNumberTest, RejectsPartialFields) {
  EXPECT_THROW(parse_double(""), std::invalid_argument);
  EXPECT_THROW(parse_double("1.0x"), std::invalid_argument);
  EXPECT_THROW(parse_double("abc"), std::invalid_argument);
  EXPECT_EQ(parse_double("-2.5e-3"), -2.5e-3);
}

TEST(CsvFileTest, WriterAndReaderRoundTrip) {
  TempDir dir("csv");
  const std::string path = (dir.path() / "t.csv").string();
  {
    CsvWriter w(path, {"a", "b"});
    w.row(std::vector<double>{0.1, 1.0 / 3.0});
    w.row(std::vector<std::string>{"x", "2"});
    EXPECT_THROW(w.row(std::vector<double>{1.0}), std::invalid_argument);
  }
  const CsvTable t = read_csv(path);
  ASSERT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.number(0, t.column("b")), 1.0 / 3.0);
  EXPECT_EQ(t.rows[1][0], "x");
  EXPECT_THROW(t.column("c"), std::out_of_range);
  EXPECT_THROW(read_csv((dir.path() / "missing.csv").string()), std::runtime_error);
}

TEST(CsvFileTest, RaggedRowsAreRejected) {
  TempDir dir("csv");
  const fs::path p = dir.path() / "bad.csv";
  std::ofstream(p) << "a,b\n1,2\n3\n";
  EXPECT_THROW(read_csv(p.string()), std::runtime_error);
}

TEST(TrajectoryCsvTest, RoundTripsAtFullPrecision) {
  ModeFamily f;
  f.state_dim = 2;
  f.disturbance_dim = f.output_dim = 1;
  f.output_map = [](const Vector& x) { return Vector::Constant(1, x(0)); };
  f.modes.push_back({"osc",
                     [](double, const Vector& x, const Vector&) {
                       Vector dx(2);
                       dx << x(1), -x(0) - 0.3 * x(1);
                       return dx;
                     },
                     [](double, const Vector& x) { return Vector::Constant(1, -0.3 * x(1)); }});
  IntegratorConfig cfg;
  cfg.t_end = 1.0;
  Vector x0(2);
  x0 << 1.0 / 7.0, -2.0 / 3.0;
  const auto res = simulate_mode(f, 0, x0, zero_disturbance(1), cfg);
  TempDir dir("traj");
  const std::string path = (dir.path() / "traj.csv").string();
  write_trajectory_csv(path, res.trajectory);
  const CsvTable t = read_csv(path);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "x0", "x1", "norm_y", "q", "mode", "u0"}));
  ASSERT_EQ(t.rows.size(), res.trajectory.size());
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    ASSERT_EQ(t.number(k, 0), res.trajectory.times[k]);
    ASSERT_EQ(t.number(k, 1), res.trajectory.states[k](0));
    ASSERT_EQ(t.number(k, 2), res.trajectory.states[k](1));
    ASSERT_EQ(t.number(k, 3), res.trajectory.output_norms[k]);
    ASSERT_EQ(t.number(k, 6), res.trajectory.controls[k](0));
  }
}

// ------------------------------------------------------------ arguments

TEST(CliArgsTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({"lorenz-table", "--bogus"}), 2);
  EXPECT_EQ(run_cli({"frobnicate"}), 2);
  EXPECT_EQ(run_cli({}), 2);
  EXPECT_EQ(run_cli({"pendulum", "--step", "-1"}), 2);
  EXPECT_EQ(run_cli({"simulate"}), 2);
}

TEST(CliArgsTest, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}), 0); }

// ---------------------------------------------------------------- sweep

TEST(SweepCommandTest, EqualRatesGiveFlatCurve) {
  TempDir dir("sweep");
  ASSERT_EQ(run_cli({"--out", dir.str(), "sweep-threshold", "--s", "10", "--eps", "0.01", "--rates", "1.5,1.5"}),
            0);
  const CsvTable t = read_csv((dir.path() / "sweep_threshold.csv").string());
  ASSERT_FALSE(t.rows.empty());
  for (std::size_t r = 0; r < t.rows.size(); ++r) ASSERT_NEAR(t.number(r, 1), t.number(0, 1), 1e-9);
  const json j = read_json(dir.path() / "sweep_threshold.json");
  EXPECT_EQ(j["argmin"]["delta"].get<double>(), t.number(0, 0));
}

TEST(SweepCommandTest, ArgminFollowsFasterMode) {
  TempDir dir("sweep");
  ASSERT_EQ(run_cli({"--out", dir.str(), "sweep-threshold", "--s", "10", "--eps", "0.01", "--rates", "2,1",
                     "--grid", "1e-5"}),
            0);
  json j = read_json(dir.path() / "sweep_threshold.json");
  EXPECT_NEAR(j["argmin"]["delta"].get<double>(), 0.01 + 1e-5, 1e-12);
  EXPECT_NEAR(j["argmin"]["total_time"].get<double>(), std::log(1000.0) / 2.0, 1e-3);

  ASSERT_EQ(run_cli({"--out", dir.str(), "sweep-threshold", "--s", "10", "--eps", "0.01", "--rates", "1,2"}), 0);
  j = read_json(dir.path() / "sweep_threshold.json");
  EXPECT_GT(j["argmin"]["delta"].get<double>(), 9.9);
}

TEST(SweepCommandTest, InfeasibleRangeExitsOne) {
  TempDir dir("sweep");
  EXPECT_EQ(run_cli({"--out", dir.str(), "sweep-threshold", "--s", "1", "--eps", "2"}), 1);
}

TEST(SweepCommandTest, EnvironmentOverridesOut) {
  TempDir env_dir("env");
  TempDir flag_dir("flag");
  ::setenv("SWITCHKIT_OUT", env_dir.str().c_str(), 1);
  const int code = run_cli({"--out", flag_dir.str(), "sweep-threshold"});
  ::unsetenv("SWITCHKIT_OUT");
  ASSERT_EQ(code, 0);
  EXPECT_TRUE(fs::exists(env_dir.path() / "sweep_threshold.csv"));
  EXPECT_FALSE(fs::exists(flag_dir.path() / "sweep_threshold.csv"));
}

// ------------------------------------------------------------- pendulum

TEST(PendulumCommandTest, DefaultRunWritesFilesAndPasses) {
  TempDir dir("pend");
  ASSERT_EQ(run_cli({"--out", dir.str(), "pendulum"}), 0);
  for (const char* name : {"slow.csv", "median.csv", "fast.csv", "hybrid.csv", "hybrid_bounds.csv",
                           "pendulum_summary.json"}) {
    EXPECT_TRUE(fs::exists(dir.path() / name)) << name;
  }
  const CsvTable hybrid = read_csv((dir.path() / "hybrid.csv").string());
  EXPECT_EQ(hybrid.header,
            (std::vector<std::string>{"t", "x1", "x2", "z1", "z2", "e1", "e2", "norm_e", "mode"}));
  const json j = read_json(dir.path() / "pendulum_summary.json");
  EXPECT_GE(j["runs"]["hybrid"]["switches"].get<int>(), 1);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(PendulumCommandTest, LongerDwellRaisesTimeToLevel) {
  TempDir quick("quick");
  TempDir slow("slow");
  ASSERT_EQ(run_cli({"--out", quick.str(), "pendulum", "--tend", "10"}), 0);
  run_cli({"--out", slow.str(), "pendulum", "--tend", "10", "--dwell", "0.5"});
  const json a = read_json(quick.path() / "pendulum_summary.json");
  const json b = read_json(slow.path() / "pendulum_summary.json");
  EXPECT_GT(b["runs"]["hybrid"]["time_to_norm_e_0.1"].get<double>(),
            a["runs"]["hybrid"]["time_to_norm_e_0.1"].get<double>());
}

TEST(PendulumCommandTest, OmegaZeroCompletes) {
  TempDir dir("pend");
  const int code = run_cli({"--out", dir.str(), "pendulum", "--omega", "0", "--tend", "5"});
  EXPECT_NE(code, 2);
  const json j = read_json(dir.path() / "pendulum_summary.json");
  EXPECT_EQ(j["metadata"]["omega"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(dir.path() / "hybrid.csv"));
}

// --------------------------------------------------------- lorenz table

TEST(LorenzTableCommandTest, UndisturbedTable) {
  TempDir dir("lorenz");
  ASSERT_EQ(run_cli({"--out", dir.str(), "lorenz-table", "--disturbed", "off"}), 0);
  const CsvTable t = read_csv((dir.path() / "lorenz_table_off.csv").string());
  ASSERT_EQ(t.rows.size(), 8u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][0] == "none") ASSERT_EQ(t.number(r, t.column("J_u")), 0.0);
  }
  const json j = read_json(dir.path() / "lorenz_table_off.json");
  EXPECT_EQ(j["metadata"]["chi_factor"].get<double>(), 0.8);
  EXPECT_EQ(j["metadata"]["integrator"]["step_size"].get<double>(), 1e-3);
}

TEST(LorenzTableCommandTest, DisturbedSupervisorBeatsLinearEffort) {
  TempDir dir("lorenz");
  ASSERT_EQ(run_cli({"--out", dir.str(), "lorenz-table", "--disturbed", "on"}), 0);
  const CsvTable t = read_csv((dir.path() / "lorenz_table_on.csv").string());
  ASSERT_EQ(t.rows.size(), 8u);
  double sup = NAN, lin = NAN;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][1] != "large") continue;
    if (t.rows[r][0] == "supervisor") sup = t.number(r, t.column("J_u"));
    if (t.rows[r][0] == "linear") lin = t.number(r, t.column("J_u"));
  }
  EXPECT_LT(sup, lin);
}

TEST(LorenzTableCommandTest, ResultsIndependentOfWorkerCount) {
  TempDir one("one");
  TempDir many("many");
  ASSERT_EQ(run_cli({"--out", one.str(), "lorenz-table", "--jobs", "1", "--tend", "10"}), run_cli({"--out", many.str(), "lorenz-table", "--jobs", "4", "--tend", "10"}));
  EXPECT_EQ(slurp(one.path() / "lorenz_table_off.csv"), slurp(many.path() / "lorenz_table_off.csv"));
}

TEST(LorenzTableCommandTest, BadDisturbedValueIsUsageError) {
  EXPECT_EQ(run_cli({"lorenz-table", "--disturbed", "maybe"}), 2);
}

// -------------------------------------------------------------- simulate

json custom_config(const std::string& supervisor) {
  return json{{"scenario", "custom"},
              {"supervisor", supervisor},
              {"integrator", {{"step_size", 1e-3}, {"event_tolerance", 1e-6}, {"t_end", 8.0}}},
              {"partition", {0.0, 1.0, 4.0}},
              {"mode_assignment", {0, 1, 1}},
              {"chi", {0.5, 2.0, 8.0}},
              {"dwell", 0.1},
              {"disturbance", {{"type", "sine"}, {"amplitude", 0.05}, {"frequency", 1.0}}},
              {"modes", {{{"name", "gentle"}, {"A", {{-1.0}}}, {"B", {{1.0}}}},
                         {{"name", "hard"}, {"A", {{-3.0}}}, {"B", {{1.0}}}}}},
              {"output", {{1.0}}},
              {"x0", {6.0}},
              {"betas", {{{"a", 1.5}, {"b", 1.0}}, {{"a", 1.5}, {"b", 3.0}}}},
              {"gamma", 1.0}};
}

TEST(SimulateCommandTest, CustomConfigRuns) {
  for (const std::string kind : {"dwell", "hysteresis"}) {
    TempDir dir("sim_" + kind);
    const fs::path cfg = dir.path() / "config.json";
    std::ofstream(cfg) << custom_config(kind).dump();
    ASSERT_EQ(run_cli({"--out", dir.str(), "simulate", "--config", cfg.string()}), 0) << kind;
    for (const char* name : {"trajectory.csv", "switches.csv", "bounds.csv", "summary.json"}) {
      EXPECT_TRUE(fs::exists(dir.path() / name)) << name;
    }
    const CsvTable sw = read_csv((dir.path() / "switches.csv").string());
    EXPECT_FALSE(sw.rows.empty());
    const json summary = read_json(dir.path() / "summary.json");
    EXPECT_TRUE(summary.contains("config"));
  }
}

TEST(SimulateCommandTest, InvalidConfigExitsOne) {
  TempDir dir("sim");
  json doc = custom_config("dwell");
  doc["mode_assignment"] = {0, 1, 7};
  const fs::path cfg = dir.path() / "config.json";
  std::ofstream(cfg) << doc.dump();
  EXPECT_EQ(run_cli({"--out", dir.str(), "simulate", "--config", cfg.string()}), 1);
  EXPECT_EQ(run_cli({"--out", dir.str(), "simulate", "--config", (dir.path() / "nope.json").string()}), 1);
}

TEST(ExperimentConfigTest, SchemaErrors) {
  json doc = custom_config("dwell");
  EXPECT_NO_THROW(parse_experiment(doc));
  doc["supervisor"] = "relay";
  EXPECT_THROW(parse_experiment(doc), std::invalid_argument);
  doc = custom_config("dwell");
  doc.erase("x0");
  EXPECT_THROW(build_experiment(parse_experiment(doc)), std::invalid_argument);
  doc = custom_config("dwell");
  doc["integrator"]["step_size"] = "fast";
  EXPECT_THROW(parse_experiment(doc), std::invalid_argument);
}

TEST(ExperimentConfigTest, CaseStudyScenariosBuild) {
  const auto pend = build_experiment(parse_experiment(json{{"scenario", "pendulum"}}));
  EXPECT_EQ(pend.family.size(), 3);
  EXPECT_EQ(pend.config.partition.top(), 3);
  EXPECT_TRUE(pend.has_bounds);
  const auto lor = build_experiment(parse_experiment(json{{"scenario", "lorenz"}, {"supervisor", "hysteresis"}}));
  EXPECT_EQ(lor.family.state_dim, 6);
  EXPECT_EQ(lor.config.chi, default_chi(lor.config.partition));
}

}  // namespace
}  // namespace switchkit
