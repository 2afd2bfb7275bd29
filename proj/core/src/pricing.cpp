#include "netmaint/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "netmaint/errors.hpp"
#include "netmaint/qp.hpp"

namespace netmaint {
namespace {

Matrix response_matrix(const CustomerNetwork& net, bool network_known) {
  if (network_known) return response_operator(net).inverse;
  if (!(net.a().array() > 0.0).all()) {
    throw SingularMatrixError("A is singular: some customer has a = 0");
  }
  return net.a().cwiseInverse().asDiagonal();
}

}  // namespace

PricingModel::PricingModel(CustomerNetwork net, bool network_known)
    : net_(std::move(net)), network_known_(network_known), response_(response_matrix(net_, network_known)) {
  hessian_ = response_ + response_.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * hessian_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition) {
    std::ostringstream os;
    os << "symmetric part of the response matrix is not positive definite (eigenvalues in [" << lo
       << ", " << hi << "])";
    throw ModelInvalidError(os.str());
  }
}

PricingResult PricingModel::solve(int t, double capacity) const {
  if (t < 0 || t >= net_.periods()) {
    throw DimensionError("period " + std::to_string(t + 1) + " outside [1, " +
                         std::to_string(net_.periods()) + "]");
  }
  if (std::isnan(capacity) || capacity < 0.0) throw DomainError("capacity must be nonnegative");

  const int n = net_.size();
  const Vector b = net_.b().col(t);
  const Matrix& r = response_;
  PricingResult out;

  if (capacity == 0.0) {
    // q = 0 forces phi = b; the multipliers below certify optimality.
    if ((b.array() < 0.0).any()) {
      throw InfeasibleError("zero capacity needs phi = b, but some b_i is negative");
    }
    out.phi = b;
    out.q = Vector::Zero(n);
    out.revenue = 0.0;
    out.multipliers.price = Vector::Zero(n);
    out.multipliers.capacity = std::max(0.0, b.maxCoeff());
    out.multipliers.consumption = Vector::Constant(n, out.multipliers.capacity) - b;
    return out;
  }

  const bool capped = std::isfinite(capacity);
  const int rows = 2 * n + (capped ? 1 : 0);
  QpProblem qp;
  qp.G = hessian_;
  qp.g = -(r * b);
  qp.C = Matrix::Zero(rows, n);
  qp.d = Vector::Zero(rows);
  qp.C.topRows(n).setIdentity();
  qp.C.middleRows(n, n) = -r;
  qp.d.segment(n, n) = -(r * b);
  if (capped) {
    qp.C.row(2 * n) = r.colwise().sum();
    qp.d(2 * n) = (r * b).sum() - capacity;
  }

  const QpResult sol = solve_qp(qp);
  out.phi = sol.x.cwiseMax(0.0);
  out.q = r * (b - out.phi);
  for (int i = 0; i < n; ++i) {
    if (out.q(i) < 0.0 && out.q(i) >= -1e-9) out.q(i) = 0.0;
  }
  out.revenue = out.phi.dot(out.q);
  out.multipliers.price = sol.multipliers.head(n);
  out.multipliers.consumption = sol.multipliers.segment(n, n);
  out.multipliers.capacity = capped ? sol.multipliers(2 * n) : 0.0;
  out.iterations = sol.iterations;
  return out;
}

PricingResult solve_pricing_qp(const CustomerNetwork& net, int t, double capacity) {
  return PricingModel(net, true).solve(t, capacity);
}

PricingResult solve_pricing_qp_no_network(const CustomerNetwork& net, int t, double capacity) {
  return PricingModel(net, false).solve(t, capacity);
}

RealizedOutcome realized_profit_of_prices(const CustomerNetwork& net, const Matrix& phi,
                                          const Vector& capacities) {
  const int n = net.size();
  const int periods = net.periods();
  if (phi.rows() != n || phi.cols() != periods || capacities.size() != periods) {
    throw DimensionError("prices must be N x T and capacities length T");
  }
  if ((phi.array() < 0.0).any()) throw DomainError("prices must be nonnegative");

  const ResponseOperator op = response_operator(net);
  RealizedOutcome out;
  out.q.resize(n, periods);
  out.q_delivered.resize(n, periods);
  out.revenue_per_period.resize(periods);
  out.delivered_revenue_per_period.resize(periods);
  for (int t = 0; t < periods; ++t) {
    Vector q;
    try {
      q = nash_closed_form(net, op, t, phi.col(t)).q;
    } catch (const InfeasiblePriceError&) {
      // Some customer drops out; the projected best-response fixed point is
      // the equilibrium then.
      q = nash_iterative(net, t, phi.col(t)).q;
    }
    out.q.col(t) = q;
    out.revenue_per_period(t) = phi.col(t).dot(q);

    const double demand = q.sum();
    Vector served = q;
    if (demand > capacities(t) + 1e-9) {
      out.violations.push_back({t, demand, capacities(t), demand - capacities(t)});
      served *= capacities(t) / demand;
    }
    out.q_delivered.col(t) = served;
    out.delivered_revenue_per_period(t) = phi.col(t).dot(served);
  }
  out.revenue = out.revenue_per_period.sum();
  out.delivered_revenue = out.delivered_revenue_per_period.sum();
  return out;
}

RevenueTable::RevenueTable(bool network_known, std::vector<RevenueEntry> entries,
                           std::vector<int> entry_of_mask)
    : network_known_(network_known), entries_(std::move(entries)), entry_of_mask_(std::move(entry_of_mask)) {}

const RevenueEntry& RevenueTable::for_available(std::uint32_t available_mask) const {
  if (available_mask >= entry_of_mask_.size()) {
    throw DimensionError("availability mask " + std::to_string(available_mask) + " out of range");
  }
  return entries_[static_cast<std::size_t>(entry_of_mask_[available_mask])];
}

RevenueTable build_revenue_table(const PricingModel& model, const UnitFleet& fleet, int t) {
  const std::uint32_t masks = 1u << fleet.size();
  std::vector<double> capacity_of_mask(masks);
  for (std::uint32_t mask = 0; mask < masks; ++mask) capacity_of_mask[mask] = fleet.capacity(mask);

  std::vector<double> levels = capacity_of_mask;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<RevenueEntry> entries;
  entries.reserve(levels.size());
  for (double level : levels) {
    RevenueEntry entry{level, model.solve(t, level)};
    if (!entries.empty() && entries.back().solution.revenue > entry.solution.revenue) {
      entry.solution = entries.back().solution;
    }
    entries.push_back(std::move(entry));
  }

  std::vector<int> entry_of_mask(masks);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    const auto it = std::lower_bound(levels.begin(), levels.end(), capacity_of_mask[mask]);
    entry_of_mask[mask] = static_cast<int>(it - levels.begin());
  }
  return RevenueTable(model.network_known(), std::move(entries), std::move(entry_of_mask));
}

RevenueTable build_revenue_table(const CustomerNetwork& net, const UnitFleet& fleet, int t,
                                 bool network_known) {
  return build_revenue_table(PricingModel(net, network_known), fleet, t);
}

std::vector<RevenueTable> build_revenue_tables(const CustomerNetwork& net, const UnitFleet& fleet,
                                               bool network_known) {
  const PricingModel model(net, network_known);
  std::vector<RevenueTable> tables;
  tables.reserve(static_cast<std::size_t>(net.periods()));
  for (int t = 0; t < net.periods(); ++t) tables.push_back(build_revenue_table(model, fleet, t));
  return tables;
}

}  // namespace netmaint
