// Hot paths on the shipped case study: one pricing solve, the per-period
// revenue tables, the joint-age DP, and scenario sampling.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "netmaint/config.hpp"
#include "netmaint/equilibrium.hpp"
#include "netmaint/pricing.hpp"
#include "netmaint/reliability.hpp"
#include "netmaint/scheduler.hpp"

using namespace netmaint;

namespace {

const ProblemConfig& config() {
  static const ProblemConfig cfg =
      load_config(std::filesystem::path(NETMAINT_SOURCE_DIR) / "configs/case_study.json");
  return cfg;
}

std::vector<int> effective() {
  const auto set = sample_scenarios(config().fleet, config().horizon.k_scenarios, config().horizon.rng_seed);
  return {set.effective.data(), set.effective.data() + set.effective.size()};
}

void BM_NashClosedForm(benchmark::State& state) {
  const auto& net = config().network;
  const Vector phi = net.b().col(0) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(nash_closed_form(net, 0, phi));
}
BENCHMARK(BM_NashClosedForm);

void BM_PricingSolve(benchmark::State& state) {
  const PricingModel model(config().network, state.range(0) != 0);
  const double cap = 0.5 * config().fleet.q_max().sum();
  for (auto _ : state) benchmark::DoNotOptimize(model.solve(0, cap));
}
BENCHMARK(BM_PricingSolve)->Arg(1)->Arg(0)->ArgName("known");

void BM_RevenueTables(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_revenue_tables(config().network, config().fleet));
}
BENCHMARK(BM_RevenueTables)->Unit(benchmark::kMillisecond);

void BM_ScheduleDp(benchmark::State& state) {
  const auto tables = build_revenue_tables(config().network, config().fleet);
  const auto eff = effective();
  for (auto _ : state) benchmark::DoNotOptimize(optimal_schedule_dp(config().fleet, eff, tables));
}
BENCHMARK(BM_ScheduleDp)->Unit(benchmark::kMillisecond);

void BM_SampleScenarios(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_scenarios(config().fleet, k, 1));
  state.SetItemsProcessed(state.iterations() * k * config().fleet.size());
}
BENCHMARK(BM_SampleScenarios)->Arg(193)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
