#include "switchkit/bounds.hpp"
#include "switchkit/pendulum.hpp"
#include "switchkit/switched_system.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace switchkit {
namespace {

Disturbance constant(double c) {
  return [c](double) { return Vector::Constant(1, c); };
}

ModeFamily trivial_family(int modes) {
  ModeFamily f;
  f.state_dim = f.disturbance_dim = f.output_dim = 1;
  f.output_map = [](const Vector& x) { return x; };
  for (int i = 0; i < modes; ++i) {
    f.modes.push_back({"m", [](double, const Vector& x, const Vector&) { return Vector(-x); }, nullptr});
  }
  return f;
}

SupervisorConfig paper_bands() {
  SupervisorConfig c;
  c.partition = Partition({0.0, 0.1, 2.0, 5.0});
  c.mode_assignment = {1, 2, 1, 0};
  c.chi = {0.05, 1.0, 3.0, 8.0};
  return c;
}

TEST(SNormTest, SupOfConstant) {
  EXPECT_DOUBLE_EQ(s_norm(constant(0.7), 0.0, 5.0, GeneralizedNormParams{}, 0.01), 0.7);
}

TEST(SNormTest, IntegralOfConstant) {
  GeneralizedNormParams p;
  p.a = 1.0;
  p.b = 0.0;
  EXPECT_NEAR(s_norm(constant(0.5), 0.0, 4.0, p, 0.01), 2.0, 1e-12);
}

TEST(SNormTest, SupOfSlowSine) {
  const Disturbance d = [](double t) { return Vector::Constant(1, 0.05 * std::sin(0.3 * t)); };
  EXPECT_NEAR(s_norm(d, 0.0, 10.0, GeneralizedNormParams{}, 1e-3), 0.05, 1e-4);
}

TEST(SNormTest, RejectsReversedWindow) {
  EXPECT_THROW(s_norm(constant(1.0), 1.0, 0.5, GeneralizedNormParams{}, 0.01), std::domain_error);
}

TEST(SNormTest, RejectsUnboundedSignal) {
  const Disturbance d = [](double t) { return Vector::Constant(1, t > 0.5 ? INFINITY : 0.0); };
  EXPECT_THROW(s_norm(d, 0.0, 1.0, GeneralizedNormParams{}, 0.01), std::domain_error);
}

TEST(SNormTest, MonotoneInHorizonForRandomPiecewiseSignals) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  GeneralizedNormParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.omega = [](double s) { return s * s; };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> levels(10);
    for (auto& l : levels) l = u(rng);
    const Disturbance d = [levels](double t) {
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), levels.size() - 1);
      return Vector::Constant(1, levels[k]);
    };
    std::vector<double> times;
    for (int k = 0; k <= 200; ++k) times.push_back(0.05 * k);
    const auto prof = s_norm_profile(d, times, p);
    for (std::size_t k = 1; k < prof.size(); ++k) ASSERT_GE(prof[k], prof[k - 1]);
  }
}

TEST(GeneralizedNormParamsTest, Validation) {
  GeneralizedNormParams p;
  EXPECT_NO_THROW(p.validate());
  p.a = 0.0;
  p.b = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.b = 1.0;
  p.omega = [](double s) { return s + 1.0; };
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(PartitionTest, RejectsBadThresholds) {
  EXPECT_THROW(Partition({0.1, 1.0}), std::invalid_argument);
  EXPECT_THROW(Partition({0.0, 1.0, 1.0}), std::invalid_argument);
  const Partition p({0.0, 1.0});
  EXPECT_EQ(p.top(), 1);
  EXPECT_TRUE(std::isinf(p.upper(1)));
}

TEST(IntervalIndexTest, Examples) {
  const Partition p({0.0, 0.1, 2.0, 5.0});
  EXPECT_EQ(interval_index(0.05, p), 0);
  EXPECT_EQ(interval_index(7.0, p), 3);
  EXPECT_EQ(interval_index(0.1, p), 1);
  EXPECT_EQ(interval_index(0.0, p), 0);
  EXPECT_THROW(interval_index(-1e-9, p), std::domain_error);
  EXPECT_THROW(interval_index(NAN, p), std::domain_error);
}

TEST(IntervalIndexTest, PartitionsTheHalfLine) {
  const Partition p({0.0, 0.3, 1.0, 4.5, 9.0});
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> e(0.2);
  for (int i = 0; i < 2000; ++i) {
    const double v = e(rng);
    const int q = interval_index(v, p);
    int members = 0;
    for (int k = 0; k <= p.top(); ++k) members += (v >= p.lower(k) && v < p.upper(k)) ? 1 : 0;
    ASSERT_EQ(members, 1);
    ASSERT_LE(p.lower(q), v);
    ASSERT_LT(v, p.upper(q));
  }
}

TEST(InSwitchBandTest, Examples) {
  const SupervisorConfig c = paper_bands();
  EXPECT_TRUE(in_switch_band(0.5, 1, c));
  EXPECT_FALSE(in_switch_band(1.5, 1, c));
  EXPECT_FALSE(in_switch_band(0.09, 1, c));
  EXPECT_FALSE(in_switch_band(1.0, 1, c));  // right-open at chi
}

TEST(InSwitchBandTest, BandImpliesInterval) {
  const SupervisorConfig c = paper_bands();
  for (double v = 0.0; v < 12.0; v += 0.0137) {
    for (int k = 0; k <= c.top(); ++k) {
      if (in_switch_band(v, k, c)) ASSERT_EQ(interval_index(v, c.partition), k);
    }
  }
}

TEST(DefaultChiTest, TwentyPercentHysteresisAndTopCap) {
  const auto chi = default_chi(Partition({0.0, 0.1, 1.0, 5.0}));
  ASSERT_EQ(chi.size(), 4u);
  EXPECT_NEAR(chi[0], 0.08, 1e-15);
  EXPECT_NEAR(chi[1], 0.82, 1e-15);
  EXPECT_NEAR(chi[2], 4.2, 1e-15);
  EXPECT_EQ(chi[3], 10.0);
  EXPECT_THROW(default_chi(Partition({0.0, 1.0}), 1.0), std::invalid_argument);
}

TEST(DwellTimeTest, ClampsIntoDomain) {
  SupervisorConfig c = paper_bands();
  for (int q = 0; q < 4; ++q) c.dwell.push_back([](double s) { return s; });
  EXPECT_EQ(c.dwell_time(1, 0.05), 0.1);         // below the interval
  EXPECT_LT(c.dwell_time(1, 3.0), 2.0);          // above it
  EXPECT_EQ(c.dwell_time(3, 1000.0), 50.0);      // top cap 10 * Delta_M
  c.zero_bottom_dwell = true;
  EXPECT_EQ(c.dwell_time(0, 0.05), 0.0);
}

TEST(CountSwitchesTest, Examples) {
  SwitchLog empty;
  EXPECT_EQ(count_switches(empty, 0.0, 100.0), 0u);
  EXPECT_TRUE(average_dwell(empty, 0.0, 100.0, 1e-3, 0));
  EXPECT_TRUE(has_average_dwell(empty, 1e-3, 0));

  SwitchLog log;
  log.events = {{1.0, 0, 1}, {2.0, 1, 0}, {3.0, 0, 1}};
  EXPECT_EQ(count_switches(log, 0.0, 2.5), 2u);
  EXPECT_EQ(count_switches(log, 2.0, 3.0), 1u);
  EXPECT_TRUE(has_average_dwell(log, 1.0, 1));
  EXPECT_FALSE(has_average_dwell(log, 1.5, 1));
}

TEST(CountSwitchesTest, AdditiveOverAdjacentWindows) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  SwitchLog log;
  double t = 0.0;
  for (int i = 0; i < 40; ++i) {
    t += 0.01 + u(rng) / 20.0;
    log.events.push_back({t, 0, 1});
  }
  for (int i = 0; i < 200; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    ASSERT_EQ(count_switches(log, a, b) + count_switches(log, b, c), count_switches(log, a, c));
  }
}

TEST(ValidateConfigTest, IdentityOvershootIsClean) {
  SupervisorConfig c;
  c.partition = Partition({0.0, 1.0, 2.0, 10.0});
  c.mode_assignment = {0, 1, 0, 1};
  c.chi = default_chi(c.partition);
  EXPECT_TRUE(validate_config(trivial_family(2), c, {KLExp{1.0, 1.0}, KLExp{1.0, 2.0}}).empty());
}

TEST(ValidateConfigTest, OvershootViolationReportedAtInterval) {
  SupervisorConfig c;
  c.partition = Partition({0.0, 1.0, 2.0, 10.0});
  c.mode_assignment = {0, 0, 0, 0};
  c.chi = default_chi(c.partition);
  const auto v = validate_config(trivial_family(1), c, {KLExp{3.0, 1.0}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].interval, 0);
}

TEST(ValidateConfigTest, StructuralViolations) {
  SupervisorConfig c;
  c.partition = Partition({0.0, 1.0});
  c.mode_assignment = {0, 3};
  c.chi = {1.5, 2.0};
  c.dwell = {constant_dwell(0.1), constant_dwell(0.0)};
  c.t_min = 0.1;
  const auto v = validate_structure(trivial_family(2), c);
  // chi_0 outside [0, 1), mode 3 missing, T_1 below t_min.
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].interval, 0);
  EXPECT_EQ(v[1].interval, 1);
  EXPECT_EQ(v[2].interval, 1);
}

TEST(ValidateConfigTest, PendulumBandsWithLyapunovEstimates) {
  // With a = sqrt(2 lmax / lmin) from the solved Lyapunov matrices the fast
  // observer's overshoot from Delta_2 = 2 reaches about 29.7 > Delta_3 = 5, so
  // the growth condition fails on interval 1 only; the structural checks
  // pass.
  const PendulumObserverSetup setup;
  const auto betas = pendulum_betas(setup);
  const SupervisorConfig c = pendulum_config(setup);
  const ModeFamily f = pendulum_family(setup);
  EXPECT_TRUE(validate_structure(f, c).empty());
  const auto v = validate_config(f, c, betas);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].interval, 1);
  EXPECT_NEAR(betas[kFast].a * 2.0, 29.686, 5e-3);
}

TEST(ModeFamilyTest, Validation) {
  ModeFamily f = trivial_family(1);
  EXPECT_NO_THROW(f.validate());
  f.modes.front().rhs = nullptr;
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f = trivial_family(1);
  f.output_map = nullptr;
  EXPECT_THROW(f.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace switchkit
