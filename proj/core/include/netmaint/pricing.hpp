#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "netmaint/equilibrium.hpp"
#include "netmaint/model.hpp"

namespace netmaint {

/// Capacity value meaning "no production limit".
inline constexpr double kUnlimitedCapacity = std::numeric_limits<double>::infinity();

/// Lagrange multipliers of the pricing problem
///
///   maximize   phi' R (b - phi)
///   subject to phi >= 0,  R (b - phi) >= 0,  1' R (b - phi) <= capacity
///
/// in the same order: one per price, one per consumption, one for capacity.
struct PricingMultipliers {
  Vector price;
  Vector consumption;
  double capacity = 0.0;
};

struct PricingResult {
  Vector phi;
  Vector q;  // consumption the supplier's model predicts at phi
  double revenue = 0.0;
  PricingMultipliers multipliers;
  int iterations = 0;
};

/// The leader's single-period pricing problem for a fixed demand model.
///
/// With `network_known` the supplier predicts q = (A - W)^{-1}(b - phi); without
/// it the supplier ignores the graph and uses q = A^{-1}(b - phi). The
/// objective is concave iff the symmetric part of the response matrix is
/// positive definite; otherwise construction throws ModelInvalidError.
class PricingModel {
 public:
  explicit PricingModel(CustomerNetwork net, bool network_known = true);

  const CustomerNetwork& network() const { return net_; }
  bool network_known() const { return network_known_; }
  const Matrix& response() const { return response_; }

  PricingResult solve(int t, double capacity) const;

 private:
  CustomerNetwork net_;
  bool network_known_;
  Matrix response_;
  Matrix hessian_;  // R + R'
};

/// Optimal prices when the supplier knows the graph.
PricingResult solve_pricing_qp(const CustomerNetwork& net, int t, double capacity);

/// Optimal prices when the supplier ignores the graph; `q` and `revenue` are
/// the supplier's (misspecified) predictions.
PricingResult solve_pricing_qp_no_network(const CustomerNetwork& net, int t, double capacity);

struct CapacityViolation {
  int period = 0;
  double demand = 0.0;
  double capacity = 0.0;
  double excess = 0.0;
};

/// Outcome of posting prices to the real network.
struct RealizedOutcome {
  Matrix q;  // true equilibrium consumption, N x T
  Vector revenue_per_period;
  double revenue = 0.0;
  std::vector<CapacityViolation> violations;
  /// Consumption actually served: in a violating period every customer's
  /// demand is scaled down by capacity / demand.
  Matrix q_delivered;
  Vector delivered_revenue_per_period;
  double delivered_revenue = 0.0;
};

/// Evaluates prices `phi` (N x T) against the true equilibrium of `net`.
RealizedOutcome realized_profit_of_prices(const CustomerNetwork& net, const Matrix& phi,
                                          const Vector& capacities);

struct RevenueEntry {
  double capacity = 0.0;
  PricingResult solution;
};

/// Pricing solutions for every capacity reachable by a maintenance subset.
class RevenueTable {
 public:
  RevenueTable(bool network_known, std::vector<RevenueEntry> entries, std::vector<int> entry_of_mask);

  bool network_known() const { return network_known_; }
  const std::vector<RevenueEntry>& entries() const { return entries_; }

  /// Entry for the set of units that are producing (bit j set = unit j up).
  const RevenueEntry& for_available(std::uint32_t available_mask) const;
  double revenue(std::uint32_t available_mask) const { return for_available(available_mask).solution.revenue; }

 private:
  bool network_known_;
  std::vector<RevenueEntry> entries_;  // sorted by capacity, distinct
  std::vector<int> entry_of_mask_;
};

/// Solves the pricing problem at each distinct capacity sum over the 2^J
/// availability patterns. Revenue is made nondecreasing in capacity by
/// carrying a smaller capacity's solution forward when it is better (it is
/// feasible for the larger capacity too).
RevenueTable build_revenue_table(const PricingModel& model, const UnitFleet& fleet, int t);

RevenueTable build_revenue_table(const CustomerNetwork& net, const UnitFleet& fleet, int t,
                                 bool network_known = true);

/// One table per period of the network.
std::vector<RevenueTable> build_revenue_tables(const CustomerNetwork& net, const UnitFleet& fleet,
                                               bool network_known = true);

}  // namespace netmaint
