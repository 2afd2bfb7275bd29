#pragma once

#include <optional>

#include "netmaint/model.hpp"

namespace netmaint {

/// Consumption profile of the customers' game for one period.
struct EquilibriumResult {
  Vector q;
  int iterations = 0;     // 0 for the closed-form path
  double residual = 0.0;  // max_i |q_i - best_response_i(q)|
};

/// Single-period utility of customer `i` at consumption profile `q` and price
/// `phi_i`. Throws DimensionError on a bad index, DomainError if q_i < 0.
double customer_utility(const CustomerNetwork& net, int i, int t, const Vector& q, double phi_i);

/// Utility-maximizing q_i >= 0 with everyone else's consumption held fixed:
/// max(0, (b_i(t) - phi_i + sum_l w_il q_l) / a_i). Entry i of `q_others` is
/// ignored. Throws UnboundedResponseError when a_i = 0.
double best_response(const CustomerNetwork& net, int i, int t, const Vector& q_others, double phi_i);

/// max_i |q_i - best_response(i, q)|.
double best_response_residual(const CustomerNetwork& net, int t, const Vector& q, const Vector& phi);

/// (A - W)^{-1} together with the 2-norm condition number of A - W.
struct ResponseOperator {
  Matrix inverse;
  double condition = 0.0;
};

/// Largest condition number of A - W accepted before it is treated as singular.
inline constexpr double kMaxCondition = 1e12;

/// Throws SingularMatrixError if A - W has condition number above kMaxCondition.
ResponseOperator response_operator(const CustomerNetwork& net);

/// q = (A - W)^{-1} (b(t) - phi), accepted only inside the nonnegative orthant.
/// Entries in [-1e-9, 0) are snapped to zero; anything more negative throws
/// InfeasiblePriceError.
EquilibriumResult nash_closed_form(const CustomerNetwork& net, int t, const Vector& phi);

/// Same as above but reuses a precomputed operator.
EquilibriumResult nash_closed_form(const CustomerNetwork& net, const ResponseOperator& op, int t,
                                   const Vector& phi);

struct IterativeOptions {
  double tol = 1e-10;
  int max_iter = 10'000;
  std::optional<Vector> start;  // zeros when empty
};

/// Fixed point of the projected best-response map by synchronous (Jacobi)
/// sweeps. Throws ConvergenceError after `max_iter` sweeps.
EquilibriumResult nash_iterative(const CustomerNetwork& net, int t, const Vector& phi,
                                 const IterativeOptions& options = {});

}  // namespace netmaint
