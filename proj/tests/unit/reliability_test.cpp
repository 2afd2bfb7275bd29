#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "netmaint/errors.hpp"
#include "netmaint/reliability.hpp"
#include "netmaint/rng.hpp"

using namespace netmaint;

namespace {

UnitFleet table_fleet() {
  return UnitFleet(Vector{{12, 10, 11.2, 9.4, 11.8}}, Vector{{1.4, 3.2, 2.5, 1.1, 2.1}},
                   Vector{{20.48, 21.39, 22.73, 24.78, 24.82}}, Vector::Ones(5));
}

UnitFleet degenerate(double mu) {
  return UnitFleet(Vector{{mu}}, Vector::Zero(1), Vector::Zero(1), Vector::Ones(1));
}

}  // namespace

TEST(Rng, Mt19937_64Stream) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next_u64();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Rng, UniformIsOpenInterval) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(Rng, QuantileInvertsCdf) {
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.9, 1 - 1e-10}) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-14);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Scenarios, DegenerateDistribution) {
  const auto set = sample_scenarios(degenerate(9.4), 25, 1);
  EXPECT_TRUE((set.samples.array() == 9.4).all());
  EXPECT_EQ(set.effective(0), 9);
}

TEST(Scenarios, EffectiveIsFloorOfMinimum) {
  const std::vector<double> s{9.7, 11.2, 10.1};
  EXPECT_EQ(effective_threshold(s), 9);
  const auto set = scenario_set_from_samples(Matrix{{9.7, 11.2, 10.1}}, 3);
  EXPECT_EQ(set.effective(0), 9);
  EXPECT_THROW(scenario_set_from_samples(Matrix{{0.5}}), DomainError);
  EXPECT_THROW(effective_threshold(std::vector<double>{}), DomainError);
}

TEST(Scenarios, DeterministicAndTruncated) {
  const auto a = sample_scenarios(table_fleet(), 100, 42);
  const auto b = sample_scenarios(table_fleet(), 100, 42);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.effective, b.effective);
  EXPECT_GT(a.samples.minCoeff(), kThresholdFloor);
  EXPECT_NE(sample_scenarios(table_fleet(), 100, 43).samples, a.samples);
}

TEST(Scenarios, LargerKExtendsStreams) {
  const auto small = sample_scenarios(table_fleet(), 50, 9);
  const auto large = sample_scenarios(table_fleet(), 200, 9);
  EXPECT_EQ(large.samples.leftCols(50), small.samples);
  EXPECT_TRUE((large.effective.array() <= small.effective.array()).all());
}

TEST(Scenarios, EffectiveFeasibleForEveryScenario) {
  const auto set = sample_scenarios(table_fleet(), 60, 5);
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 60; ++k) EXPECT_LE(set.effective(j), set.samples(j, k));
  }
}

TEST(Scenarios, EmptyScenarioCountRejected) {
  EXPECT_THROW(sample_scenarios(table_fleet(), 0, 1), DomainError);
}

TEST(ScenarioHint, Formula) {
  EXPECT_EQ(scenario_count_hint(0.1, 0.01, 1), 113);
  EXPECT_EQ(scenario_count_hint(0.5, std::exp(-1.0), 0), 4);
  const int loose = scenario_count_hint(0.99, 0.5, 1);
  EXPECT_GE(loose, 2);
  EXPECT_LT(loose, 5);
  EXPECT_EQ(scenario_count_hint(0.1, 0.01, 5), 193);
  EXPECT_THROW(scenario_count_hint(0.0, 0.5, 1), DomainError);
  EXPECT_THROW(scenario_count_hint(0.5, 1.0, 1), DomainError);
  EXPECT_THROW(scenario_count_hint(0.5, 0.5, -1), DomainError);
}

TEST(ViolationRate, MaintainEveryPeriodNeverViolates) {
  const auto sched = MaintenanceSchedule::from_actions(IntMatrix::Ones(5, 20));
  EXPECT_EQ(empirical_violation_rate(sched, table_fleet(), 2000, 1), 0.0);
}

TEST(ViolationRate, DeterministicExceedance) {
  const auto sched = MaintenanceSchedule::from_actions(IntMatrix::Zero(1, 10));
  EXPECT_EQ(empirical_violation_rate(sched, degenerate(9.4), 100, 1), 1.0);
  const auto ok = MaintenanceSchedule::from_actions(IntMatrix::Zero(1, 9));
  EXPECT_EQ(empirical_violation_rate(ok, degenerate(9.4), 100, 1), 0.0);
}

TEST(ViolationRate, MatchesAnalyticProbability) {
  // Peak state 10 against N(12, 1.4) truncated at ~1: P(S < 10).
  const UnitFleet fleet(Vector{{12}}, Vector{{1.4}}, Vector::Zero(1), Vector::Ones(1));
  const auto sched = MaintenanceSchedule::from_actions(IntMatrix::Zero(1, 10));
  const double p = normal_cdf((10 - 12) / 1.4);
  const double rate = empirical_violation_rate(sched, fleet, 40000, 8);
  EXPECT_NEAR(rate, p, 4 * std::sqrt(p * (1 - p) / 40000));
}

TEST(ScenariosCsv, Layout) {
  const auto set = scenario_set_from_samples(Matrix{{2.5, 3.0}, {4.25, 7.0}}, 0);
  EXPECT_EQ(scenarios_csv(set), "unit,k,sample\n1,1,2.5\n1,2,3\n2,1,4.25\n2,2,7\neffective,2,4\n");
}
