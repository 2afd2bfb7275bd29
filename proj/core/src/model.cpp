#include "netmaint/model.hpp"

#include <cmath>
#include <sstream>

#include "netmaint/errors.hpp"

namespace netmaint {
namespace {

template <typename A, typename B>
bool same(const A& lhs, const B& rhs) {
  return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && (lhs.array() == rhs.array()).all();
}

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

void require_finite(const Eigen::Ref<const Matrix>& m, const char* name) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!std::isfinite(m(r, c))) {
        std::ostringstream os;
        os << name << " must be finite (entry " << r + 1;
        if (m.cols() > 1) os << "," << c + 1;
        os << ")";
        invalid(os.str());
      }
    }
  }
}

}  // namespace

CustomerNetwork::CustomerNetwork(Vector a, Matrix b, Matrix w)
    : a_(std::move(a)), b_(std::move(b)), w_(std::move(w)) {
  const auto n = a_.size();
  if (n < 1) invalid("network needs at least one customer");
  if (b_.rows() != n) invalid("b must have one row per customer");
  if (b_.cols() < 1) invalid("b must have at least one period");
  if (w_.rows() != n || w_.cols() != n) invalid("w must be N x N");
  require_finite(a_, "a");
  require_finite(b_, "b");
  require_finite(w_, "w");

  for (Eigen::Index i = 0; i < n; ++i) {
    if (a_(i) < 0.0) invalid("a must be nonnegative (customer " + std::to_string(i + 1) + ")");
    if (w_(i, i) != 0.0) invalid("w diagonal must be zero (customer " + std::to_string(i + 1) + ")");
    for (Eigen::Index l = 0; l < n; ++l) {
      if (w_(i, l) < 0.0) {
        invalid("w must be nonnegative (entry " + std::to_string(i + 1) + "," +
                std::to_string(l + 1) + ")");
      }
    }
    const double row = w_.row(i).sum();
    if (a_(i) < row) {
      std::ostringstream os;
      os.precision(17);
      os << "diagonal dominance assumption a_i >= sum_l w_il violated for customer " << i + 1
         << ": a=" << a_(i) << " < " << row;
      invalid(os.str());
    }
  }
}

Vector CustomerNetwork::b_at(int t) const {
  if (t < 0 || t >= periods()) {
    throw DimensionError("period " + std::to_string(t + 1) + " outside [1, " +
                         std::to_string(periods()) + "]");
  }
  return b_.col(t);
}

double CustomerNetwork::dominance_margin() const {
  return (a_ - w_.rowwise().sum()).minCoeff();
}

CustomerNetwork CustomerNetwork::without_externalities() const {
  return CustomerNetwork(a_, b_, Matrix::Zero(size(), size()));
}

bool operator==(const CustomerNetwork& lhs, const CustomerNetwork& rhs) {
  return same(lhs.a_, rhs.a_) && same(lhs.b_, rhs.b_) && same(lhs.w_, rhs.w_);
}

UnitFleet::UnitFleet(Vector mu, Vector sigma, Vector cost, Vector q_max)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), cost_(std::move(cost)), q_max_(std::move(q_max)) {
  const auto j = mu_.size();
  if (j < 1) invalid("fleet needs at least one unit");
  if (j > 24) invalid("fleet is limited to 24 units");
  if (sigma_.size() != j || cost_.size() != j || q_max_.size() != j) {
    invalid("mu, sigma, cost and q_max must have the same length");
  }
  require_finite(mu_, "mu");
  require_finite(sigma_, "sigma");
  require_finite(cost_, "cost");
  require_finite(q_max_, "q_max");
  for (Eigen::Index u = 0; u < j; ++u) {
    const auto unit = std::to_string(u + 1);
    if (!(mu_(u) > 1.0)) invalid("mu must exceed 1 (unit " + unit + ")");
    if (sigma_(u) < 0.0) invalid("sigma must be nonnegative (unit " + unit + ")");
    if (cost_(u) < 0.0) invalid("cost must be nonnegative (unit " + unit + ")");
    if (!(q_max_(u) > 0.0)) invalid("q_max must be positive (unit " + unit + ")");
  }
}

double UnitFleet::capacity(std::uint32_t available_mask) const {
  double total = 0.0;
  for (int u = 0; u < size(); ++u) {
    if (available_mask & (1u << u)) total += q_max_(u);
  }
  return total;
}

bool operator==(const UnitFleet& lhs, const UnitFleet& rhs) {
  return same(lhs.mu_, rhs.mu_) && same(lhs.sigma_, rhs.sigma_) && same(lhs.cost_, rhs.cost_) &&
         same(lhs.q_max_, rhs.q_max_);
}

void Horizon::validate() const {
  if (t_count < 1) invalid("t_count must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) invalid("alpha must lie in (0, 1)");
  if (k_scenarios < 1) invalid("k_scenarios must be at least 1");
}

IntMatrix deterioration_trace(const IntMatrix& x) {
  IntMatrix s(x.rows(), x.cols() + 1);
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    s(j, 0) = 1;
    for (Eigen::Index t = 0; t < x.cols(); ++t) s(j, t + 1) = (1 - x(j, t)) * s(j, t) + 1;
  }
  return s;
}

MaintenanceSchedule MaintenanceSchedule::from_actions(IntMatrix x) {
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (Eigen::Index t = 0; t < x.cols(); ++t) {
      if (x(j, t) != 0 && x(j, t) != 1) {
        invalid("maintenance actions must be 0 or 1 (unit " + std::to_string(j + 1) + ", period " +
                std::to_string(t + 1) + ")");
      }
    }
  }
  MaintenanceSchedule out;
  out.s = deterioration_trace(x);
  out.x = std::move(x);
  return out;
}

bool operator==(const MaintenanceSchedule& lhs, const MaintenanceSchedule& rhs) {
  return same(lhs.x, rhs.x) && same(lhs.s, rhs.s);
}

ScheduleCheck validate_schedule(const MaintenanceSchedule& sched, const UnitFleet& fleet,
                                std::span<const int> thresholds) {
  if (sched.units() != fleet.size() || static_cast<int>(thresholds.size()) != fleet.size()) {
    throw DimensionError("schedule has " + std::to_string(sched.units()) + " units, fleet has " +
                         std::to_string(fleet.size()) + ", thresholds " +
                         std::to_string(thresholds.size()));
  }
  const IntMatrix s = deterioration_trace(sched.x);
  ScheduleCheck check;
  for (int j = 0; j < sched.units(); ++j) {
    for (int t = 0; t < sched.periods(); ++t) {
      if (s(j, t) > thresholds[j]) check.violations.push_back({j, t, s(j, t), thresholds[j]});
    }
  }
  check.feasible = check.violations.empty();
  return check;
}

}  // namespace netmaint
