#include "netmaint/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "netmaint/errors.hpp"

namespace netmaint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Working-set linear algebra. With normals N (columns) and H = G^{-1}:
//   r = (N' H N)^{-1} N' H n_p      (dual step direction)
//   z = H n_p - H N r               (primal step direction)
struct StepDirections {
  Vector z;
  Vector r;
};

StepDirections directions(const Eigen::LLT<Matrix>& chol, const Matrix& C,
                          const std::vector<int>& active, int p) {
  const Vector np = C.row(p).transpose();
  const Vector h_np = chol.solve(np);
  if (active.empty()) return {h_np, Vector()};

  Matrix normals(C.cols(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k) {
    normals.col(static_cast<Eigen::Index>(k)) = C.row(active[k]).transpose();
  }
  const Matrix h_normals = chol.solve(normals);
  const Matrix gram = normals.transpose() * h_normals;
  Vector r = gram.colPivHouseholderQr().solve(normals.transpose() * h_np);
  Vector z = h_np - h_normals * r;
  return {std::move(z), std::move(r)};
}

}  // namespace

QpResult solve_qp(const QpProblem& problem, const QpOptions& options) {
  const auto n = problem.G.rows();
  const auto m = problem.C.rows();
  if (problem.G.cols() != n || problem.g.size() != n || (m > 0 && problem.C.cols() != n) ||
      problem.d.size() != m) {
    throw DimensionError("inconsistent QP dimensions");
  }

  const Matrix sym = 0.5 * (problem.G + problem.G.transpose());
  Eigen::LLT<Matrix> chol(sym);
  if (chol.info() != Eigen::Success) throw ModelInvalidError("QP Hessian is not positive definite");

  const int max_iterations =
      options.max_iterations > 0 ? options.max_iterations : static_cast<int>(20 * (m + n) + 50);

  QpResult out;
  out.x = -chol.solve(problem.g);
  out.multipliers = Vector::Zero(m);
  std::vector<int> active;
  std::vector<double> u;  // multipliers of `active`, same order

  const Vector row_norms = m > 0 ? Vector(problem.C.rowwise().norm()) : Vector();
  auto slack = [&](int i) { return problem.C.row(i).dot(out.x) - problem.d(i); };
  auto violation_tol = [&](int i) {
    return options.feasibility_tol *
           (1.0 + std::abs(problem.d(i)) + row_norms(i) * out.x.cwiseAbs().maxCoeff());
  };
  auto in_working_set = [&](int i) { return std::find(active.begin(), active.end(), i) != active.end(); };

  int iterations = 0;
  for (;;) {
    // Most violated constraint outside the working set, scaled by row norm.
    int p = -1;
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      if (in_working_set(i) || row_norms(i) == 0.0) continue;
      const double s = slack(i);
      if (s < -violation_tol(i)) {
        const double scaled = s / row_norms(i);
        if (p < 0 || scaled < worst) {
          p = i;
          worst = scaled;
        }
      }
    }
    if (p < 0) break;

    double u_p = 0.0;
    for (;;) {
      if (++iterations > max_iterations) {
        throw ConvergenceError("dual active-set QP exceeded " + std::to_string(max_iterations) +
                               " iterations");
      }
      const StepDirections dir = directions(chol, problem.C, active, p);
      const double z_norm = dir.z.norm();
      const double np_norm = row_norms(p);

      // Largest dual step keeping the working-set multipliers nonnegative.
      double t_dual = kInf;
      int drop = -1;
      for (std::size_t k = 0; k < active.size(); ++k) {
        const double rk = dir.r(static_cast<Eigen::Index>(k));
        if (rk > 1e-14) {
          const double ratio = u[k] / rk;
          if (ratio < t_dual) {
            t_dual = ratio;
            drop = static_cast<int>(k);
          }
        }
      }

      double t_primal = kInf;
      const double curvature = dir.z.dot(problem.C.row(p).transpose());
      if (z_norm > 1e-13 * (1.0 + np_norm) && curvature > 0.0) t_primal = -slack(p) / curvature;

      const double step = std::min(t_dual, t_primal);
      if (step == kInf) {
        throw InfeasibleError("QP constraints are infeasible (constraint " + std::to_string(p + 1) +
                              " cannot be satisfied)");
      }

      if (t_primal < kInf) out.x += step * dir.z;
      for (std::size_t k = 0; k < active.size(); ++k) u[k] -= step * dir.r(static_cast<Eigen::Index>(k));
      u_p += step;

      if (t_primal <= t_dual) {
        active.push_back(p);
        u.push_back(u_p);
        break;
      }
      active.erase(active.begin() + drop);
      u.erase(u.begin() + drop);
    }
  }

  for (std::size_t k = 0; k < active.size(); ++k) out.multipliers(active[k]) = std::max(u[k], 0.0);
  out.active = std::move(active);
  out.iterations = iterations;
  out.objective = 0.5 * out.x.dot(sym * out.x) + problem.g.dot(out.x);
  return out;
}

}  // namespace netmaint
