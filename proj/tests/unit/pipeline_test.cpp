#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netmaint/config.hpp"
#include "netmaint/errors.hpp"
#include "netmaint/pipeline.hpp"
#include "netmaint/report.hpp"

using namespace netmaint;
namespace fs = std::filesystem;

namespace {

const ProblemConfig& case_study() {
  static const ProblemConfig cfg = load_config(fs::path(NETMAINT_SOURCE_DIR) / "configs/case_study.json");
  return cfg;
}

const CaseStudyResult& case_result() {
  static const CaseStudyResult r = run_case_study(case_study());
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

ProblemConfig small_config(bool with_graph, double cost) {
  const Matrix w = with_graph ? Matrix{{0, 0.6, 0.3}, {0.6, 0, 0}, {0.3, 0, 0}} : Matrix::Zero(3, 3);
  Matrix b(3, 8);
  for (int t = 0; t < 8; ++t) b.col(t) = Vector::Constant(3, t < 4 ? 8.0 : 12.0);
  return ProblemConfig{CustomerNetwork(Vector::Constant(3, 1.5), b, w),
                       UnitFleet(Vector{{4, 5}}, Vector{{0.5, 0.8}}, Vector::Constant(2, cost), Vector{{4, 5}}),
                       Horizon{8, 0.1, 30, 77}};
}

}  // namespace

TEST(Pipeline, CaseStudyOrdering) {
  const auto& r = case_result();
  ASSERT_TRUE(r.known && r.unknown && r.baseline);
  EXPECT_EQ(r.scenario_count, 193);
  EXPECT_GT(r.known->profit, r.baseline->profit);
  EXPECT_GT(r.known->profit, r.unknown->realized_profit);
  EXPECT_TRUE(r.known->feasible && r.baseline->feasible && r.unknown->predicted.feasible);
}

TEST(Pipeline, HubCustomerConsumesMost) {
  const auto& r = case_result();
  Eigen::Index hub = 0;
  Eigen::Index top = 0;
  case_study().network.w().rowwise().sum().maxCoeff(&hub);
  r.known->pricing.q.rowwise().sum().maxCoeff(&top);
  EXPECT_EQ(hub, 0);
  EXPECT_EQ(top, hub);
}

TEST(Pipeline, SummaryMatchesRecomputation) {
  const auto& r = case_result();
  const auto known = evaluate_schedule(r.known->schedule.x, case_study().fleet, r.effective, r.known_tables);
  EXPECT_NEAR(known.profit, r.known->profit, 1e-9);
  const auto& u = *r.unknown;
  const auto realized = realized_profit_of_prices(case_study().network, u.predicted.pricing.phi, u.predicted.capacity);
  EXPECT_NEAR(realized.delivered_revenue - u.predicted.maintenance_cost, u.realized_profit, 1e-9);
  EXPECT_NEAR(realized.revenue - u.predicted.maintenance_cost, u.realized_profit_unrationed, 1e-9);
}

TEST(Pipeline, SingleMaintenanceMovesNeverHelp) {
  const auto& r = case_result();
  const auto& fleet = case_study().fleet;
  const IntMatrix& x = r.known->schedule.x;
  int tried = 0;
  for (int j = 0; j < x.rows(); ++j) {
    for (int t = 0; t < x.cols(); ++t) {
      if (!x(j, t)) continue;
      for (int other = 0; other < x.cols(); ++other) {
        if (x(j, other)) continue;
        IntMatrix moved = x;
        moved(j, t) = 0;
        moved(j, other) = 1;
        const auto rep = evaluate_schedule(moved, fleet, r.effective, r.known_tables);
        if (!rep.feasible) continue;
        ++tried;
        EXPECT_LE(rep.profit, r.known->profit + 1e-9) << "unit " << j + 1 << " " << t + 1 << "->" << other + 1;
      }
    }
  }
  EXPECT_GT(tried, 0);
}

TEST(Pipeline, WithoutGraphBothSupplierModelsAgree) {
  const auto r = run_case_study(small_config(false, 1.0));
  EXPECT_NEAR(r.known->profit, r.unknown->realized_profit, 1e-9);
  EXPECT_NEAR(r.known->profit, r.unknown->predicted.profit, 1e-9);
  EXPECT_TRUE(r.unknown->realized.violations.empty());
}

TEST(Pipeline, WithGraphKnowingItPays) {
  const auto r = run_case_study(small_config(true, 1.0));
  const auto rows = compare_modes(r);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].mode, "unknown");
  EXPECT_GT(rows[1].delta_vs_known, 0.0);
  EXPECT_GE(rows[2].delta_vs_known, 0.0);
  EXPECT_EQ(rows[0].delta_vs_known, 0.0);
}

TEST(Pipeline, FreeMaintenanceGapIsRevenueGap) {
  const auto r = run_case_study(small_config(true, 0.0));
  EXPECT_EQ(r.known->maintenance_cost, 0.0);
  EXPECT_NEAR(r.known->profit - r.baseline->profit,
              r.known->pricing.total_revenue - r.baseline->pricing.total_revenue, 1e-9);
}

TEST(Pipeline, ModeSelectionAndOverrides) {
  RunOptions opt;
  opt.known = false;
  opt.unknown = false;
  opt.seed = 5;
  opt.scenarios = 11;
  const auto r = run_case_study(small_config(true, 1.0), opt);
  EXPECT_FALSE(r.known);
  EXPECT_FALSE(r.unknown);
  ASSERT_TRUE(r.baseline);
  EXPECT_EQ(r.seed, 5u);
  EXPECT_EQ(r.scenarios.samples.cols(), 11);
  EXPECT_TRUE(r.unknown_tables.empty());
  EXPECT_TRUE(std::isnan(compare_modes(r)[0].delta_vs_known));

  opt.baseline = false;
  EXPECT_THROW(run_case_study(small_config(true, 1.0), opt), ValidationError);
}

TEST(Report, RowCountsMatchDimensions) {
  const auto& r = case_result();
  const std::size_t n = 10, t = 30, j = 5;
  EXPECT_EQ(lines(prices_csv(r.known->pricing.phi)), 1 + n * t);
  EXPECT_EQ(lines(consumption_csv(r.known->pricing.q)), 1 + n * t);
  EXPECT_EQ(lines(unknown_consumption_csv(*r.unknown)), 1 + n * t);
  EXPECT_EQ(lines(schedule_csv(r.known->schedule)), 1 + j * t);
  EXPECT_EQ(lines(deterioration_csv(r.known->schedule, r.effective)), 1 + j * t);
  EXPECT_EQ(lines(demand_csv(case_study().network)), 1 + n * t);
  EXPECT_EQ(lines(scenarios_csv(r.scenarios)), 1 + j * 193 + 1);
  EXPECT_EQ(lines(profit_summary_csv(r)), 1 + 5u);
  EXPECT_EQ(lines(comparison_csv(r)), 1 + 3u);
}

TEST(Report, ScheduleCsvLayout) {
  IntMatrix x(1, 3);
  x << 0, 1, 0;
  EXPECT_EQ(schedule_csv(MaintenanceSchedule::from_actions(x)), "unit,period,x,s\n1,1,0,1\n1,2,1,2\n1,3,0,1\n");
}

TEST(Report, WritesIdenticalTreesTwice) {
  const auto& r = case_result();
  const auto manifest = make_manifest("configs/case_study.json", r);
  EXPECT_EQ(manifest.modes, (std::vector<std::string>{"known", "unknown", "baseline"}));
  const fs::path base = fs::temp_directory_path() / "netmaint_report_test";
  fs::remove_all(base);
  const auto a = write_report(r, manifest, base / "a");
  const auto again = run_case_study(case_study());
  const auto b = write_report(again, make_manifest("configs/case_study.json", again), base / "b");
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.size(), 20u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(fs::relative(a[k], base / "a"), fs::relative(b[k], base / "b"));
    EXPECT_EQ(slurp(a[k]), slurp(b[k])) << a[k];
  }
  const std::string m = slurp(base / "a" / "manifest.json");
  EXPECT_NE(m.find("\"seed\": 20240601"), std::string::npos);
  EXPECT_EQ(m.find("netmaint_report_test"), std::string::npos);
  fs::remove_all(base);
}

TEST(Report, UnwritableDirectoryIsIoError) {
  const auto& r = case_result();
  EXPECT_THROW(write_report(r, make_manifest("x", r), "/proc/netmaint-cannot-write"), IoError);
}
