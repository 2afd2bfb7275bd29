#pragma once

#include <cstdint>
#include <span>

#include "netmaint/model.hpp"
#include "netmaint/pricing.hpp"

namespace netmaint {

// Every path below scores a schedule the same way: period t contributes
//   revenue_t(available units) - sum_j c_j x(j,t)
// and the profit is the fold v_0 + (v_1 + (... + v_{T-1})), so the DP, the
// brute-force oracle and evaluate_schedule agree bit for bit on equal
// schedules.
//
// Among equal-profit schedules (relative tolerance 1e-9) the one with fewer
// maintenance actions wins, then the one that maintains earlier: at the first
// period where two schedules differ, the one maintaining the lowest-numbered
// unit the other does not.

struct DpOptions {
  /// Upper bound on |states| * 2^J * T transition evaluations.
  std::uint64_t budget = 1'000'000'000;
};

/// Exact maximization of total profit over maintenance schedules by dynamic
/// programming over joint ages (ages_j in [1, effective_j]). A unit at its
/// effective threshold must be maintained unless it is the last period.
///
/// Throws SizeError when the state space exceeds the budget and
/// InfeasibleError when no schedule keeps every age within its threshold.
SolutionReport optimal_schedule_dp(const UnitFleet& fleet, std::span<const int> effective,
                                   std::span<const RevenueTable> tables, const DpOptions& options = {});

/// Exhaustive search over all 2^(J T) action matrices. Throws SizeError when
/// 2^(J T) > limit.
SolutionReport brute_force_schedule(const UnitFleet& fleet, std::span<const int> effective,
                                    std::span<const RevenueTable> tables, std::uint64_t limit);

/// Maintain each unit exactly when its state reaches its effective threshold.
SolutionReport baseline_schedule(const UnitFleet& fleet, std::span<const int> effective,
                                 std::span<const RevenueTable> tables);

/// Scores an arbitrary action matrix x (J x T). Infeasible schedules are
/// reported through `feasible` / `violations`, not thrown.
SolutionReport evaluate_schedule(const IntMatrix& x, const UnitFleet& fleet, std::span<const int> effective,
                                 std::span<const RevenueTable> tables);

}  // namespace netmaint
