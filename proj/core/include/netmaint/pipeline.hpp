#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netmaint/config.hpp"
#include "netmaint/pricing.hpp"
#include "netmaint/reliability.hpp"
#include "netmaint/scheduler.hpp"

namespace netmaint {

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides horizon.rng_seed
  std::optional<int> scenarios;       // overrides horizon.k_scenarios
  bool known = true;
  bool unknown = true;
  bool baseline = true;
  DpOptions dp;
};

/// The supplier plans with A^{-1} (no graph) and then posts its prices to the
/// real network.
struct UnknownNetworkResult {
  SolutionReport predicted;
  RealizedOutcome realized;
  /// Served revenue (demand above capacity is rationed away) minus maintenance.
  double realized_profit = 0.0;
  /// Same, but charging for the full equilibrium demand even when it exceeds
  /// capacity. Not attainable; reported for reference.
  double realized_profit_unrationed = 0.0;
};

struct CaseStudyResult {
  explicit CaseStudyResult(ProblemConfig c) : config(std::move(c)) {}

  ProblemConfig config;
  std::uint64_t seed = 0;
  int scenario_count = 0;
  ScenarioSet scenarios;
  std::vector<int> effective;

  std::vector<RevenueTable> known_tables;    // empty unless known or baseline ran
  std::vector<RevenueTable> unknown_tables;  // empty unless unknown ran

  std::optional<SolutionReport> known;
  std::optional<UnknownNetworkResult> unknown;
  std::optional<SolutionReport> baseline;
};

/// Samples thresholds, builds revenue tables and runs the selected modes:
/// known-graph DP, graph-blind DP evaluated on the real network, and the
/// maintain-at-threshold baseline (priced with the known graph).
CaseStudyResult run_case_study(const ProblemConfig& config, const RunOptions& options = {});

struct ModeComparison {
  std::string mode;
  double profit = 0.0;
  double delta_vs_known = 0.0;     // known profit minus this one
  double relative_delta = 0.0;     // delta / |known profit|
};

/// One row per mode that ran; deltas are NaN when the known mode did not run.
std::vector<ModeComparison> compare_modes(const CaseStudyResult& result);

}  // namespace netmaint
