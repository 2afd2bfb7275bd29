#include "netmaint/pipeline.hpp"

#include <cmath>
#include <limits>

#include "netmaint/errors.hpp"

namespace netmaint {

CaseStudyResult run_case_study(const ProblemConfig& config, const RunOptions& options) {
  if (!options.known && !options.unknown && !options.baseline) throw ValidationError("no mode selected");
  config.horizon.validate();

  CaseStudyResult out(config);
  out.seed = options.seed.value_or(config.horizon.rng_seed);
  out.scenario_count = options.scenarios.value_or(config.horizon.k_scenarios);
  if (out.scenario_count < 1) throw ValidationError("scenario count must be at least 1");

  const CustomerNetwork& net = config.network;
  const UnitFleet& fleet = config.fleet;
  out.scenarios = sample_scenarios(fleet, out.scenario_count, out.seed);
  out.effective.assign(out.scenarios.effective.data(),
                       out.scenarios.effective.data() + out.scenarios.effective.size());

  if (options.known || options.baseline) out.known_tables = build_revenue_tables(net, fleet, true);
  if (options.known) out.known = optimal_schedule_dp(fleet, out.effective, out.known_tables, options.dp);
  if (options.baseline) out.baseline = baseline_schedule(fleet, out.effective, out.known_tables);

  if (options.unknown) {
    out.unknown_tables = build_revenue_tables(net, fleet, false);
    UnknownNetworkResult u;
    u.predicted = optimal_schedule_dp(fleet, out.effective, out.unknown_tables, options.dp);
    u.realized = realized_profit_of_prices(net, u.predicted.pricing.phi, u.predicted.capacity);
    u.realized_profit = u.realized.delivered_revenue - u.predicted.maintenance_cost;
    u.realized_profit_unrationed = u.realized.revenue - u.predicted.maintenance_cost;
    out.unknown = std::move(u);
  }
  return out;
}

std::vector<ModeComparison> compare_modes(const CaseStudyResult& result) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double known = result.known ? result.known->profit : nan;
  std::vector<ModeComparison> rows;
  auto add = [&](std::string mode, double profit) {
    const double delta = known - profit;
    rows.push_back({std::move(mode), profit, delta, delta / std::abs(known)});
  };
  if (result.known) add("known", result.known->profit);
  if (result.unknown) add("unknown", result.unknown->realized_profit);
  if (result.baseline) add("baseline", result.baseline->profit);
  return rows;
}

}  // namespace netmaint
