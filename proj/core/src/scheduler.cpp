#include "netmaint/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "netmaint/errors.hpp"

namespace netmaint {
namespace {

constexpr double kNoPath = -std::numeric_limits<double>::infinity();

bool ties(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// True if maintenance set `a` is "earlier" than `b`: it contains the
// lowest-numbered unit on which the two differ.
bool earlier(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

double maintenance_cost(const UnitFleet& fleet, std::uint32_t maintained) {
  double cost = 0.0;
  for (int j = 0; j < fleet.size(); ++j) {
    if (maintained & (1u << j)) cost += fleet.cost()(j);
  }
  return cost;
}

struct Instance {
  int units = 0;
  int periods = 0;
  std::uint32_t masks = 0;
  // period_value[t * masks + maintained]
  std::vector<double> period_value;

  double value(int t, std::uint32_t maintained) const {
    return period_value[static_cast<std::size_t>(t) * masks + maintained];
  }
};

Instance prepare(const UnitFleet& fleet, std::span<const int> effective, std::span<const RevenueTable> tables) {
  if (static_cast<int>(effective.size()) != fleet.size()) {
    throw DimensionError("need one effective threshold per unit");
  }
  if (tables.empty()) throw DimensionError("need at least one period");
  Instance inst;
  inst.units = fleet.size();
  inst.periods = static_cast<int>(tables.size());
  inst.masks = 1u << inst.units;
  const std::uint32_t all = inst.masks - 1;
  inst.period_value.resize(static_cast<std::size_t>(inst.periods) * inst.masks);
  for (int t = 0; t < inst.periods; ++t) {
    for (std::uint32_t m = 0; m < inst.masks; ++m) {
      inst.period_value[static_cast<std::size_t>(t) * inst.masks + m] =
          tables[static_cast<std::size_t>(t)].revenue(all & ~m) - maintenance_cost(fleet, m);
    }
  }
  return inst;
}

bool better(double value, int count, double best_value, int best_count) {
  if (!ties(value, best_value)) return value > best_value;
  return count < best_count;
}

IntMatrix actions_from_masks(int units, const std::vector<std::uint32_t>& masks) {
  IntMatrix x = IntMatrix::Zero(units, static_cast<Eigen::Index>(masks.size()));
  for (std::size_t t = 0; t < masks.size(); ++t) {
    for (int j = 0; j < units; ++j) x(j, static_cast<Eigen::Index>(t)) = (masks[t] >> j) & 1u;
  }
  return x;
}

}  // namespace

SolutionReport evaluate_schedule(const IntMatrix& x, const UnitFleet& fleet, std::span<const int> effective,
                                 std::span<const RevenueTable> tables) {
  if (x.rows() != fleet.size() || x.cols() != static_cast<Eigen::Index>(tables.size())) {
    throw DimensionError("actions must be J x T with one revenue table per period");
  }
  const Instance inst = prepare(fleet, effective, tables);
  SolutionReport report;
  report.schedule = MaintenanceSchedule::from_actions(x);
  const ScheduleCheck check = validate_schedule(report.schedule, fleet, effective);
  report.feasible = check.feasible;
  report.violations = check.violations;

  const int periods = inst.periods;
  const auto n = tables[0].entries().front().solution.phi.size();
  report.pricing.phi.resize(n, periods);
  report.pricing.q.resize(n, periods);
  report.pricing.revenue_per_period.resize(periods);
  report.capacity.resize(periods);

  std::vector<std::uint32_t> maintained(static_cast<std::size_t>(periods), 0u);
  for (int t = 0; t < periods; ++t) {
    for (int j = 0; j < inst.units; ++j) {
      if (x(j, t)) maintained[static_cast<std::size_t>(t)] |= 1u << j;
    }
    const std::uint32_t available = (inst.masks - 1) & ~maintained[static_cast<std::size_t>(t)];
    const RevenueEntry& entry = tables[static_cast<std::size_t>(t)].for_available(available);
    report.capacity(t) = entry.capacity;
    report.pricing.phi.col(t) = entry.solution.phi;
    report.pricing.q.col(t) = entry.solution.q;
    report.pricing.revenue_per_period(t) = entry.solution.revenue;
    report.maintenance_cost += maintenance_cost(fleet, maintained[static_cast<std::size_t>(t)]);
  }
  report.pricing.total_revenue = report.pricing.revenue_per_period.sum();

  double profit = 0.0;
  for (int t = periods - 1; t >= 0; --t) profit = inst.value(t, maintained[static_cast<std::size_t>(t)]) + profit;
  report.profit = profit;
  return report;
}

SolutionReport optimal_schedule_dp(const UnitFleet& fleet, std::span<const int> effective,
                                   std::span<const RevenueTable> tables, const DpOptions& options) {
  const Instance inst = prepare(fleet, effective, tables);
  const int units = inst.units;
  const int periods = inst.periods;
  for (int j = 0; j < units; ++j) {
    if (effective[static_cast<std::size_t>(j)] < 1) {
      throw InfeasibleError("unit " + std::to_string(j + 1) +
                            " has effective threshold below the initial state 1; no feasible schedule");
    }
  }

  std::vector<std::uint64_t> stride(static_cast<std::size_t>(units));
  std::uint64_t states = 1;
  for (int j = 0; j < units; ++j) {
    stride[static_cast<std::size_t>(j)] = states;
    const auto e = static_cast<std::uint64_t>(effective[static_cast<std::size_t>(j)]);
    if (states > options.budget / e) {
      throw SizeError("joint age state space exceeds the transition budget of " +
                      std::to_string(options.budget));
    }
    states *= e;
  }
  const std::uint64_t transitions = states * inst.masks * static_cast<std::uint64_t>(periods);
  if (transitions / inst.masks / static_cast<std::uint64_t>(periods) != states ||
      transitions > options.budget) {
    throw SizeError("DP needs " + std::to_string(states) + " joint age states x " +
                    std::to_string(inst.masks) + " actions x " + std::to_string(periods) +
                    " periods, over the budget of " + std::to_string(options.budget));
  }

  const auto s_count = static_cast<std::size_t>(states);
  std::vector<double> next_value(s_count, 0.0);
  std::vector<int> next_count(s_count, 0);
  std::vector<double> value(s_count);
  std::vector<int> count(s_count);
  std::vector<std::uint32_t> policy(s_count * static_cast<std::size_t>(periods));
  std::vector<int> age(static_cast<std::size_t>(units));

  for (int t = periods - 1; t >= 0; --t) {
    const bool last = t == periods - 1;
    std::fill(age.begin(), age.end(), 1);
    for (std::size_t state = 0; state < s_count; ++state) {
      std::uint32_t forced = 0;
      if (!last) {
        for (int j = 0; j < units; ++j) {
          if (age[static_cast<std::size_t>(j)] == effective[static_cast<std::size_t>(j)]) forced |= 1u << j;
        }
      }

      double best_value = kNoPath;
      int best_count = 0;
      std::uint32_t best_mask = 0;
      bool found = false;
      for (std::uint32_t m = 0; m < inst.masks; ++m) {
        if ((m & forced) != forced) continue;
        double cont = 0.0;
        int cont_count = 0;
        if (!last) {
          std::size_t next = state;
          for (int j = 0; j < units; ++j) {
            const auto js = static_cast<std::size_t>(j);
            if (m & (1u << j)) {
              next -= static_cast<std::size_t>(age[js] - 1) * stride[js];
            } else {
              next += stride[js];
            }
          }
          cont = next_value[next];
          cont_count = next_count[next];
          if (cont == kNoPath) continue;
        }
        const double v = inst.value(t, m) + cont;
        const int c = std::popcount(m) + cont_count;
        if (!found || better(v, c, best_value, best_count) ||
            (ties(v, best_value) && c == best_count && earlier(m, best_mask))) {
          best_value = v;
          best_count = c;
          best_mask = m;
          found = true;
        }
      }
      value[state] = best_value;
      count[state] = best_count;
      policy[static_cast<std::size_t>(t) * s_count + state] = best_mask;

      // Advance the mixed-radix age counter.
      for (int j = 0; j < units; ++j) {
        auto& a = age[static_cast<std::size_t>(j)];
        if (a < effective[static_cast<std::size_t>(j)]) {
          ++a;
          break;
        }
        a = 1;
      }
    }
    std::swap(value, next_value);
    std::swap(count, next_count);
  }

  if (next_value[0] == kNoPath) throw InfeasibleError("no maintenance schedule satisfies the thresholds");

  std::vector<std::uint32_t> masks(static_cast<std::size_t>(periods));
  std::fill(age.begin(), age.end(), 1);
  for (int t = 0; t < periods; ++t) {
    std::size_t state = 0;
    for (int j = 0; j < units; ++j) {
      state += static_cast<std::size_t>(age[static_cast<std::size_t>(j)] - 1) * stride[static_cast<std::size_t>(j)];
    }
    const std::uint32_t m = policy[static_cast<std::size_t>(t) * s_count + state];
    masks[static_cast<std::size_t>(t)] = m;
    for (int j = 0; j < units; ++j) {
      auto& a = age[static_cast<std::size_t>(j)];
      a = (m & (1u << j)) ? 1 : a + 1;
    }
  }
  return evaluate_schedule(actions_from_masks(units, masks), fleet, effective, tables);
}

SolutionReport brute_force_schedule(const UnitFleet& fleet, std::span<const int> effective,
                                    std::span<const RevenueTable> tables, std::uint64_t limit) {
  const Instance inst = prepare(fleet, effective, tables);
  const int units = inst.units;
  const int periods = inst.periods;
  const int bits = units * periods;
  if (bits >= 63 || (std::uint64_t{1} << bits) > limit) {
    throw SizeError("brute force needs 2^" + std::to_string(bits) + " schedules, limit is " +
                    std::to_string(limit));
  }

  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint32_t unit_mask = inst.masks - 1;
  auto mask_at = [&](std::uint64_t code, int t) {
    return static_cast<std::uint32_t>(code >> (t * units)) & unit_mask;
  };

  bool found = false;
  std::uint64_t best_code = 0;
  double best_value = 0.0;
  int best_count = 0;
  std::vector<int> age(static_cast<std::size_t>(units));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::fill(age.begin(), age.end(), 1);
    bool feasible = true;
    for (int t = 0; t < periods && feasible; ++t) {
      const std::uint32_t m = mask_at(code, t);
      for (int j = 0; j < units; ++j) {
        auto& a = age[static_cast<std::size_t>(j)];
        if (a > effective[static_cast<std::size_t>(j)]) {
          feasible = false;
          break;
        }
        a = (m & (1u << j)) ? 1 : a + 1;
      }
    }
    if (!feasible) continue;

    double v = 0.0;
    for (int t = periods - 1; t >= 0; --t) v = inst.value(t, mask_at(code, t)) + v;
    const int c = std::popcount(code);

    bool take = !found || better(v, c, best_value, best_count);
    if (!take && ties(v, best_value) && c == best_count) {
      for (int t = 0; t < periods; ++t) {
        const std::uint32_t a = mask_at(code, t);
        const std::uint32_t b = mask_at(best_code, t);
        if (a != b) {
          take = earlier(a, b);
          break;
        }
      }
    }
    if (take) {
      found = true;
      best_code = code;
      best_value = v;
      best_count = c;
    }
  }
  if (!found) throw InfeasibleError("no maintenance schedule satisfies the thresholds");

  std::vector<std::uint32_t> masks(static_cast<std::size_t>(periods));
  for (int t = 0; t < periods; ++t) masks[static_cast<std::size_t>(t)] = mask_at(best_code, t);
  return evaluate_schedule(actions_from_masks(units, masks), fleet, effective, tables);
}

SolutionReport baseline_schedule(const UnitFleet& fleet, std::span<const int> effective,
                                 std::span<const RevenueTable> tables) {
  if (static_cast<int>(effective.size()) != fleet.size()) {
    throw DimensionError("need one effective threshold per unit");
  }
  const int periods = static_cast<int>(tables.size());
  IntMatrix x = IntMatrix::Zero(fleet.size(), periods);
  for (int j = 0; j < fleet.size(); ++j) {
    const int limit = effective[static_cast<std::size_t>(j)];
    if (limit < 1) throw DomainError("effective threshold of unit " + std::to_string(j + 1) + " is below 1");
    int s = 1;
    for (int t = 0; t < periods; ++t) {
      x(j, t) = s == limit ? 1 : 0;
      s = (1 - x(j, t)) * s + 1;
    }
  }
  return evaluate_schedule(x, fleet, effective, tables);
}

}  // namespace netmaint
