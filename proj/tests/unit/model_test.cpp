#include <gtest/gtest.h>

#include <random>

#include "netmaint/errors.hpp"
#include "netmaint/model.hpp"

using namespace netmaint;

namespace {

CustomerNetwork pair_network() {
  return CustomerNetwork(Vector::Constant(2, 2.0), Matrix::Constant(2, 1, 3.0), Matrix{{0, 1}, {1, 0}});
}

UnitFleet one_unit(double mu = 10.0) {
  return UnitFleet(Vector::Constant(1, mu), Vector::Zero(1), Vector::Ones(1), Vector::Ones(1));
}

template <class F>
std::string validation_message(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(CustomerNetwork, AcceptsValidNetwork) {
  const auto net = pair_network();
  EXPECT_EQ(net.size(), 2);
  EXPECT_EQ(net.periods(), 1);
  EXPECT_DOUBLE_EQ(net.dominance_margin(), 1.0);
  EXPECT_EQ(net.b_at(0), Vector::Constant(2, 3.0));
  EXPECT_THROW(net.b_at(1), DimensionError);
}

TEST(CustomerNetwork, RejectsNonzeroDiagonal) {
  const auto msg = validation_message(
      [] { CustomerNetwork(Vector::Constant(2, 2.0), Matrix::Ones(2, 1), Matrix{{0.5, 0}, {0, 0}}); });
  EXPECT_NE(msg.find("w diagonal must be zero"), std::string::npos) << msg;
  EXPECT_NE(msg.find("customer 1"), std::string::npos) << msg;
}

TEST(CustomerNetwork, RejectsDominanceViolationNamingCustomer) {
  const auto msg = validation_message(
      [] { CustomerNetwork(Vector{{0.1, 5.0}}, Matrix::Ones(2, 1), Matrix{{0, 2.0}, {1.0, 0}}); });
  EXPECT_NE(msg.find("diagonal dominance"), std::string::npos) << msg;
  EXPECT_NE(msg.find("customer 1"), std::string::npos) << msg;
}

TEST(CustomerNetwork, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(CustomerNetwork(Vector{{-1.0}}, Matrix::Ones(1, 1), Matrix::Zero(1, 1)), ValidationError);
  EXPECT_THROW(CustomerNetwork(Vector::Ones(2), Matrix::Ones(2, 1), Matrix{{0, -0.1}, {0, 0}}), ValidationError);
  EXPECT_THROW(CustomerNetwork(Vector{{NAN}}, Matrix::Ones(1, 1), Matrix::Zero(1, 1)), ValidationError);
  EXPECT_THROW(CustomerNetwork(Vector::Ones(2), Matrix::Ones(3, 1), Matrix::Zero(2, 2)), ValidationError);
}

TEST(CustomerNetwork, EqualityAllowsEqualityInDominance) {
  // a_i = sum_l w_il is allowed at construction; solving decides invertibility.
  EXPECT_NO_THROW(CustomerNetwork(Vector::Ones(2), Matrix::Ones(2, 1), Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(pair_network(), pair_network());
  EXPECT_FALSE(pair_network() == pair_network().without_externalities());
}

TEST(UnitFleet, ValidatesInvariants) {
  EXPECT_THROW(one_unit(1.0), ValidationError);
  EXPECT_THROW(UnitFleet(Vector{{5.0}}, Vector{{-1.0}}, Vector{{1.0}}, Vector{{1.0}}), ValidationError);
  EXPECT_THROW(UnitFleet(Vector{{5.0}}, Vector{{1.0}}, Vector{{-1.0}}, Vector{{1.0}}), ValidationError);
  EXPECT_THROW(UnitFleet(Vector{{5.0}}, Vector{{1.0}}, Vector{{1.0}}, Vector{{0.0}}), ValidationError);
  EXPECT_THROW(UnitFleet(Vector{{5.0, 6.0}}, Vector{{1.0}}, Vector{{1.0}}, Vector{{1.0}}), ValidationError);
}

TEST(UnitFleet, CapacityOfMask) {
  const UnitFleet fleet(Vector{{5, 6, 7}}, Vector::Zero(3), Vector::Zero(3), Vector{{1, 2, 4}});
  EXPECT_DOUBLE_EQ(fleet.capacity(0), 0.0);
  EXPECT_DOUBLE_EQ(fleet.capacity(0b101), 5.0);
  EXPECT_DOUBLE_EQ(fleet.capacity(0b111), 7.0);
}

TEST(Horizon, Validate) {
  EXPECT_NO_THROW((Horizon{30, 0.1, 10, 1}.validate()));
  EXPECT_THROW((Horizon{0, 0.1, 10, 1}.validate()), ValidationError);
  EXPECT_THROW((Horizon{3, 1.0, 10, 1}.validate()), ValidationError);
  EXPECT_THROW((Horizon{3, 0.1, 0, 1}.validate()), ValidationError);
}

TEST(MaintenanceSchedule, TraceFollowsDynamics) {
  IntMatrix x(1, 9);
  x << 0, 0, 0, 1, 0, 0, 0, 1, 0;
  const auto sched = MaintenanceSchedule::from_actions(x);
  IntMatrix expected(1, 10);
  expected << 1, 2, 3, 4, 1, 2, 3, 4, 1, 2;
  EXPECT_EQ(sched.s, expected);
  EXPECT_EQ(sched.maintenance_count(), 2);
}

TEST(MaintenanceSchedule, RandomActionsObeyRecurrence) {
  std::mt19937_64 g(7);
  IntMatrix x(4, 25);
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (Eigen::Index t = 0; t < x.cols(); ++t) x(j, t) = static_cast<int>(g() & 1u);
  }
  const IntMatrix s = deterioration_trace(x);
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    EXPECT_EQ(s(j, 0), 1);
    for (Eigen::Index t = 0; t < x.cols(); ++t) {
      EXPECT_EQ(s(j, t + 1), x(j, t) ? 1 : s(j, t) + 1);
      EXPECT_GE(s(j, t), 1);
    }
  }
}

TEST(MaintenanceSchedule, RejectsNonBinaryActions) {
  IntMatrix x(1, 2);
  x << 0, 2;
  EXPECT_THROW(MaintenanceSchedule::from_actions(x), ValidationError);
}

TEST(ValidateSchedule, NoMaintenanceExceedsThreshold) {
  const auto sched = MaintenanceSchedule::from_actions(IntMatrix::Zero(1, 5));
  const std::vector<int> thresholds{4};
  const auto check = validate_schedule(sched, one_unit(), thresholds);
  EXPECT_FALSE(check.feasible);
  ASSERT_EQ(check.violations.size(), 1u);
  EXPECT_EQ(check.violations[0], (ScheduleViolation{0, 4, 5, 4}));
}

TEST(ValidateSchedule, MaintenanceAtPeakIsFeasible) {
  IntMatrix x = IntMatrix::Zero(1, 5);
  x(0, 3) = 1;
  const std::vector<int> thresholds{4};
  EXPECT_TRUE(validate_schedule(MaintenanceSchedule::from_actions(x), one_unit(), thresholds).feasible);
}

TEST(ValidateSchedule, PeriodicMaintenanceOverThirtyDays) {
  IntMatrix x = IntMatrix::Zero(1, 30);
  for (int t = 8; t < 30; t += 9) x(0, t) = 1;
  const std::vector<int> thresholds{9};
  const auto sched = MaintenanceSchedule::from_actions(x);
  EXPECT_TRUE(validate_schedule(sched, one_unit(), thresholds).feasible);
  EXPECT_EQ(sched.s.row(0).head(30).maxCoeff(), 9);
}

TEST(ValidateSchedule, IgnoresStoredStates) {
  auto sched = MaintenanceSchedule::from_actions(IntMatrix::Zero(1, 5));
  sched.s.setOnes();
  const std::vector<int> thresholds{4};
  EXPECT_FALSE(validate_schedule(sched, one_unit(), thresholds).feasible);
}

TEST(ValidateSchedule, DimensionMismatch) {
  const auto sched = MaintenanceSchedule::from_actions(IntMatrix::Zero(2, 3));
  const std::vector<int> thresholds{4};
  EXPECT_THROW(validate_schedule(sched, one_unit(), thresholds), DimensionError);
}
