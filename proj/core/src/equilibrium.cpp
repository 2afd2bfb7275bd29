#include "netmaint/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "netmaint/errors.hpp"

namespace netmaint {
namespace {

void check_customer(const CustomerNetwork& net, int i) {
  if (i < 0 || i >= net.size()) {
    throw DimensionError("customer " + std::to_string(i + 1) + " outside [1, " +
                         std::to_string(net.size()) + "]");
  }
}

void check_period(const CustomerNetwork& net, int t) {
  if (t < 0 || t >= net.periods()) {
    throw DimensionError("period " + std::to_string(t + 1) + " outside [1, " +
                         std::to_string(net.periods()) + "]");
  }
}

void check_length(const CustomerNetwork& net, const Vector& v, const char* name) {
  if (v.size() != net.size()) {
    throw DimensionError(std::string(name) + " has " + std::to_string(v.size()) +
                         " entries, network has " + std::to_string(net.size()));
  }
}

// Externality felt by customer i, excluding its own entry.
double neighbour_pull(const CustomerNetwork& net, int i, const Vector& q) {
  double pull = 0.0;
  for (int l = 0; l < net.size(); ++l) {
    if (l != i) pull += net.w()(i, l) * q(l);
  }
  return pull;
}

Vector sweep(const CustomerNetwork& net, int t, const Vector& q, const Vector& phi) {
  Vector next(net.size());
  for (int i = 0; i < net.size(); ++i) next(i) = best_response(net, i, t, q, phi(i));
  return next;
}

}  // namespace

double customer_utility(const CustomerNetwork& net, int i, int t, const Vector& q, double phi_i) {
  check_customer(net, i);
  check_period(net, t);
  check_length(net, q, "q");
  const double qi = q(i);
  if (qi < 0.0) throw DomainError("consumption must be nonnegative");
  return -0.5 * net.a()(i) * qi * qi + net.b()(i, t) * qi + neighbour_pull(net, i, q) * qi - phi_i * qi;
}

double best_response(const CustomerNetwork& net, int i, int t, const Vector& q_others, double phi_i) {
  check_customer(net, i);
  check_period(net, t);
  check_length(net, q_others, "q_others");
  const double a = net.a()(i);
  if (!(a > 0.0)) {
    throw UnboundedResponseError("customer " + std::to_string(i + 1) +
                                 " has a = 0; the best response is unbounded");
  }
  const double unconstrained = (net.b()(i, t) - phi_i + neighbour_pull(net, i, q_others)) / a;
  return unconstrained > 0.0 ? unconstrained : 0.0;
}

double best_response_residual(const CustomerNetwork& net, int t, const Vector& q, const Vector& phi) {
  check_length(net, phi, "phi");
  return (sweep(net, t, q, phi) - q).cwiseAbs().maxCoeff();
}

ResponseOperator response_operator(const CustomerNetwork& net) {
  Matrix m = -net.w();
  m.diagonal() += net.a();
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double condition = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxCondition)) {
    std::ostringstream os;
    os << "A - W is singular or ill-conditioned (condition number " << condition << ")";
    throw SingularMatrixError(os.str());
  }
  return {m.partialPivLu().inverse(), condition};
}

EquilibriumResult nash_closed_form(const CustomerNetwork& net, int t, const Vector& phi) {
  return nash_closed_form(net, response_operator(net), t, phi);
}

EquilibriumResult nash_closed_form(const CustomerNetwork& net, const ResponseOperator& op, int t,
                                   const Vector& phi) {
  check_period(net, t);
  check_length(net, phi, "phi");
  EquilibriumResult out;
  out.q = op.inverse * (net.b().col(t) - phi);
  for (int i = 0; i < net.size(); ++i) {
    if (out.q(i) < -1e-9) {
      std::ostringstream os;
      os.precision(17);
      os << "prices drive consumption of customer " << i + 1 << " negative (q=" << out.q(i) << ")";
      throw InfeasiblePriceError(os.str());
    }
    if (out.q(i) < 0.0) out.q(i) = 0.0;
  }
  out.residual = best_response_residual(net, t, out.q, phi);
  return out;
}

EquilibriumResult nash_iterative(const CustomerNetwork& net, int t, const Vector& phi,
                                 const IterativeOptions& options) {
  check_period(net, t);
  check_length(net, phi, "phi");
  Vector q = options.start ? *options.start : Vector::Zero(net.size());
  check_length(net, q, "start");
  if ((q.array() < 0.0).any()) throw DomainError("start point must be nonnegative");

  Vector next = sweep(net, t, q, phi);
  for (int k = 1; k <= options.max_iter; ++k) {
    q = std::move(next);
    next = sweep(net, t, q, phi);
    const double residual = (next - q).cwiseAbs().maxCoeff();
    if (residual <= options.tol) return {q, k, residual};
  }
  throw ConvergenceError("best-response iteration did not converge in " +
                         std::to_string(options.max_iter) + " sweeps");
}

}  // namespace netmaint
