#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace netmaint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Indices in the API are zero-based (customer i, unit j, period t). Error
// messages report them one-based.

/// Customers, their quadratic utility parameters and the externality graph.
///
/// Utility of customer i in period t:
///   -a_i q_i^2 / 2 + b_i(t) q_i + sum_l w_il q_l q_i - phi_i q_i
///
/// The constructor enforces a_i >= 0, w_il >= 0, w_ii = 0 and the diagonal
/// dominance condition a_i >= sum_l w_il.
class CustomerNetwork {
 public:
  /// `b` is N x T; each column is the linear coefficient vector of one period.
  CustomerNetwork(Vector a, Matrix b, Matrix w);

  int size() const { return static_cast<int>(a_.size()); }
  int periods() const { return static_cast<int>(b_.cols()); }

  const Vector& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& w() const { return w_; }

  Vector b_at(int t) const;

  /// min_i (a_i - sum_l w_il); strictly positive means A - W is invertible.
  double dominance_margin() const;

  /// Same customers with every externality weight set to zero.
  CustomerNetwork without_externalities() const;

  friend bool operator==(const CustomerNetwork&, const CustomerNetwork&);

 private:
  Vector a_;
  Matrix b_;
  Matrix w_;
};

/// Manufacturing units: Normal(mu_j, sigma_j) degradation threshold,
/// maintenance cost c_j and production capacity q_j,max.
class UnitFleet {
 public:
  UnitFleet(Vector mu, Vector sigma, Vector cost, Vector q_max);

  int size() const { return static_cast<int>(mu_.size()); }

  const Vector& mu() const { return mu_; }
  const Vector& sigma() const { return sigma_; }
  const Vector& cost() const { return cost_; }
  const Vector& q_max() const { return q_max_; }

  /// Sum of q_max over the units whose bit is set in `available_mask`.
  double capacity(std::uint32_t available_mask) const;

  friend bool operator==(const UnitFleet&, const UnitFleet&);

 private:
  Vector mu_;
  Vector sigma_;
  Vector cost_;
  Vector q_max_;
};

struct Horizon {
  int t_count = 1;
  double alpha = 0.1;
  int k_scenarios = 1;
  std::uint64_t rng_seed = 0;

  /// Throws ValidationError on t_count < 1, alpha outside (0,1) or k < 1.
  void validate() const;

  bool operator==(const Horizon&) const = default;
};

/// x(j,t) = 1 means unit j is maintained (and produces nothing) in period t.
/// s(j,t) is the deterioration state; s(j,0) = 1 and
/// s(j,t+1) = (1 - x(j,t)) s(j,t) + 1, so s has T + 1 columns.
struct MaintenanceSchedule {
  IntMatrix x;
  IntMatrix s;

  /// Builds the schedule from the actions alone. Throws ValidationError if an
  /// entry of x is not 0 or 1.
  static MaintenanceSchedule from_actions(IntMatrix x);

  int units() const { return static_cast<int>(x.rows()); }
  int periods() const { return static_cast<int>(x.cols()); }
  int maintenance_count() const { return x.sum(); }

  friend bool operator==(const MaintenanceSchedule&, const MaintenanceSchedule&);
};

/// Deterioration states for the actions `x` (J x T), J x (T + 1).
IntMatrix deterioration_trace(const IntMatrix& x);

struct PricingSolution {
  Matrix phi;  // N x T
  Matrix q;    // N x T
  Vector revenue_per_period;
  double total_revenue = 0.0;
};

struct ScheduleViolation {
  int unit = 0;
  int period = 0;
  int state = 0;
  int threshold = 0;

  bool operator==(const ScheduleViolation&) const = default;
};

struct ScheduleCheck {
  bool feasible = true;
  std::vector<ScheduleViolation> violations;
};

/// True iff s(j,t) <= thresholds[j] for every unit and every t in [0, T).
/// The states are recomputed from `sched.x`; `sched.s` is not trusted.
ScheduleCheck validate_schedule(const MaintenanceSchedule& sched, const UnitFleet& fleet,
                                std::span<const int> thresholds);

struct SolutionReport {
  MaintenanceSchedule schedule;
  PricingSolution pricing;
  Vector capacity;  // available production per period
  double maintenance_cost = 0.0;
  double profit = 0.0;
  bool feasible = true;
  std::vector<ScheduleViolation> violations;
};

}  // namespace netmaint
