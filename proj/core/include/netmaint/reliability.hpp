#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "netmaint/model.hpp"

namespace netmaint {

/// Sampled degradation thresholds, one row per unit and one column per
/// scenario, and the integer age bound they imply.
struct ScenarioSet {
  Matrix samples;  // J x K
  std::uint64_t seed = 0;
  IntVector effective;  // floor(min_k samples(j, k))
};

/// Draws are rejected at or below this value.
inline constexpr double kThresholdFloor = 1.0 + 1e-6;

/// K thresholds per unit from Normal(mu_j, sigma_j) truncated below at
/// kThresholdFloor. Unit j reads its own stream Rng(derive_seed(seed, j)),
/// so a larger K extends each unit's scenarios instead of reshuffling them.
///
/// Throws DomainError if k < 1 or a unit's acceptance probability is below
/// 1e-6.
ScenarioSet sample_scenarios(const UnitFleet& fleet, int k, std::uint64_t seed);

/// Wraps externally supplied samples (every entry must exceed 1).
ScenarioSet scenario_set_from_samples(Matrix samples, std::uint64_t seed = 0);

/// floor(min(samples)).
int effective_threshold(std::span<const double> samples);

/// ceil((2 / alpha) (ln(1 / beta) + decision_dims)): the classic scenario
/// count after which the sampled solution violates the chance constraint with
/// probability above alpha only with confidence-failure probability beta.
int scenario_count_hint(double alpha, double beta, int decision_dims);

/// Fraction of `m_trials` fresh threshold draws under which the schedule lets
/// some unit's state exceed its threshold. Trial m draws one threshold per
/// unit, in unit order, from Rng(seed + m).
double empirical_violation_rate(const MaintenanceSchedule& schedule, const UnitFleet& fleet,
                                int m_trials, std::uint64_t seed);

/// CSV dump: header `unit,k,sample`, one row per draw (1-based unit and k),
/// then a footer `effective,<e_1>,...,<e_J>`.
std::string scenarios_csv(const ScenarioSet& set);

}  // namespace netmaint
