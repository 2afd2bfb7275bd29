#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netmaint/model.hpp"

namespace netmaint {

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  VarType type = VarType::Continuous;
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const Variable&) const = default;
};

struct LinearTerm {
  std::string var;
  double coef = 0.0;

  bool operator==(const LinearTerm&) const = default;
};

/// coef * var1 * var2 (var1 == var2 for squares).
struct QuadraticTerm {
  std::string var1;
  std::string var2;
  double coef = 0.0;

  bool operator==(const QuadraticTerm&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

using Assignment = std::map<std::string, double, std::less<>>;

/// Mixed-integer QP in algebraic form.
struct MiqpModel {
  std::string name = "netmaint";
  bool maximize = true;
  double big_m = 0.0;
  std::vector<LinearTerm> objective;
  std::vector<QuadraticTerm> objective_quadratic;
  std::vector<Constraint> constraints;
  std::vector<Variable> variables;

  bool operator==(const MiqpModel&) const = default;

  /// CPLEX LP text (see docs/miqp-format.md).
  std::string to_lp() const;

  /// Parses the subset of the LP format that `to_lp` writes. Throws ParseError.
  static MiqpModel parse_lp(std::string_view text);

  double objective_value(const Assignment& values) const;

  /// Names of rows, bounds (`bound:<var>`) and integrality (`binary:<var>`)
  /// violated by more than `tol`. Missing variables count as 0.
  std::vector<std::string> violations(const Assignment& values, double tol = 1e-7) const;
};

/// Number of rows export_miqp produces: J T (4 + K) + T (1 + N).
int miqp_row_count(int units, int periods, int scenarios, int customers);

/// Big-M used by export_miqp: max_j floor(min_k thresholds(j, k)) + T + 1.
double miqp_big_m(const Matrix& thresholds, int periods);

/// Joint pricing/maintenance model with big-M linearized dynamics.
///
/// Variables (1-based suffixes): phi_i_t >= 0, x_j_t binary, s_j_t and
/// y_j_t >= 0 (y = x s). Rows:
///   init_j          s_j_1 = 1
///   dyn_j_t         s_j_{t+1} - s_j_t + y_j_t = 1            (t < T)
///   bigm_lo_j_t     y_j_t - s_j_t - M x_j_t >= -M
///   bigm_hi_j_t     y_j_t - s_j_t + M x_j_t <= M
///   bigm_on_j_t     y_j_t - M x_j_t <= 0
///   scen_j_t_k      s_j_t <= thresholds(j, k)
///   cap_t           1'R(b_t - phi_t) <= sum_j (1 - x_j_t) q_max_j
///   demand_i_t      (R(b_t - phi_t))_i >= 0
/// Objective: max sum_t phi_t' R (b_t - phi_t) - sum_{j,t} c_j x_j_t, with
/// R = (A - W)^{-1}, or A^{-1} when `network_known` is false.
///
/// `thresholds` is J x K: raw scenario samples, or a single column of
/// effective thresholds.
MiqpModel export_miqp(const CustomerNetwork& net, const UnitFleet& fleet, const Matrix& thresholds,
                      bool network_known = true);

/// Full assignment (phi, x, s, y) for a solved schedule and its prices.
Assignment miqp_assignment(const MaintenanceSchedule& schedule, const Matrix& phi);

}  // namespace netmaint
