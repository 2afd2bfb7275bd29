#pragma once

#include <vector>

#include "netmaint/model.hpp"

namespace netmaint {

/// Strictly convex QP
///
///   minimize    0.5 x'Gx + g'x
///   subject to  C x >= d        (one constraint per row of C)
///
/// with G symmetric positive definite.
struct QpProblem {
  Matrix G;
  Vector g;
  Matrix C;
  Vector d;
};

struct QpResult {
  Vector x;
  Vector multipliers;       // one per constraint row, zero when inactive
  std::vector<int> active;  // rows in the final working set
  int iterations = 0;
  double objective = 0.0;
};

struct QpOptions {
  /// Relative tolerance on constraint violation.
  double feasibility_tol = 1e-12;
  int max_iterations = 0;  // 0 picks 20 * (rows + cols) + 50
};

/// Dual active-set method (Goldfarb-Idnani). Starts from the unconstrained
/// minimizer and adds the most violated constraint until the iterate is
/// primal feasible, keeping dual feasibility throughout.
///
/// Throws ModelInvalidError if G is not positive definite and InfeasibleError
/// when the constraints admit no solution.
QpResult solve_qp(const QpProblem& problem, const QpOptions& options = {});

}  // namespace netmaint
