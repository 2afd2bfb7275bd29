#include "netmaint/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netmaint/errors.hpp"
#include "netmaint/format.hpp"
#include "netmaint/version.hpp"

namespace netmaint {
namespace {

using nlohmann::ordered_json;

std::string r(double v) { return format_real(v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os.flush()) throw IoError("failed writing " + path.string());
}

void summary_row(std::ostringstream& os, const char* mode, double revenue, double cost, double profit,
                 int maintenances, bool feasible, std::size_t capacity_violations) {
  os << mode << ',' << r(revenue) << ',' << r(cost) << ',' << r(profit) << ',' << maintenances << ','
     << (feasible ? 1 : 0) << ',' << capacity_violations << '\n';
}

void summary_row(std::ostringstream& os, const char* mode, const SolutionReport& rep) {
  summary_row(os, mode, rep.pricing.total_revenue, rep.maintenance_cost, rep.profit,
              rep.schedule.maintenance_count(), rep.feasible, 0);
}

}  // namespace

RunManifest make_manifest(const std::string& config_path, const CaseStudyResult& result) {
  RunManifest m;
  m.config_path = config_path;
  m.seed = result.seed;
  m.scenarios = result.scenario_count;
  if (result.known) m.modes.emplace_back("known");
  if (result.unknown) m.modes.emplace_back("unknown");
  if (result.baseline) m.modes.emplace_back("baseline");
  m.version = kVersion;
  return m;
}

std::string manifest_json(const RunManifest& manifest, const ProblemConfig& config) {
  ordered_json doc;
  doc["tool"] = "netmaint";
  doc["version"] = manifest.version;
  doc["config_path"] = manifest.config_path;
  doc["seed"] = manifest.seed;
  doc["scenarios"] = manifest.scenarios;
  doc["modes"] = manifest.modes;
  doc["config"] = ordered_json::parse(write_config(config));
  return doc.dump(2) + "\n";
}

std::string profit_summary_csv(const CaseStudyResult& result) {
  std::ostringstream os;
  os << "mode,revenue,maintenance_cost,profit,maintenances,feasible,capacity_violations\n";
  if (result.known) summary_row(os, "known", *result.known);
  if (result.unknown) {
    const auto& u = *result.unknown;
    const auto& p = u.predicted;
    const int count = p.schedule.maintenance_count();
    summary_row(os, "unknown_predicted", p);
    summary_row(os, "unknown_realized", u.realized.delivered_revenue, p.maintenance_cost, u.realized_profit, count,
                p.feasible, u.realized.violations.size());
    summary_row(os, "unknown_realized_unrationed", u.realized.revenue, p.maintenance_cost,
                u.realized_profit_unrationed, count, p.feasible, u.realized.violations.size());
  }
  if (result.baseline) summary_row(os, "baseline", *result.baseline);
  return os.str();
}

std::string comparison_csv(const CaseStudyResult& result) {
  std::ostringstream os;
  os << "mode,profit,delta_vs_known,relative_delta\n";
  for (const auto& row : compare_modes(result)) {
    os << row.mode << ',' << r(row.profit) << ',' << r(row.delta_vs_known) << ',' << r(row.relative_delta) << '\n';
  }
  return os.str();
}

std::string demand_csv(const CustomerNetwork& net) {
  std::ostringstream os;
  os << "customer,period,b\n";
  for (int t = 0; t < net.periods(); ++t) {
    for (int i = 0; i < net.size(); ++i) os << i + 1 << ',' << t + 1 << ',' << r(net.b()(i, t)) << '\n';
  }
  return os.str();
}

std::string prices_csv(const Matrix& phi) {
  std::ostringstream os;
  os << "customer,period,phi\n";
  for (Eigen::Index t = 0; t < phi.cols(); ++t) {
    for (Eigen::Index i = 0; i < phi.rows(); ++i) os << i + 1 << ',' << t + 1 << ',' << r(phi(i, t)) << '\n';
  }
  return os.str();
}

std::string consumption_csv(const Matrix& q) {
  std::ostringstream os;
  os << "customer,period,q\n";
  for (Eigen::Index t = 0; t < q.cols(); ++t) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) os << i + 1 << ',' << t + 1 << ',' << r(q(i, t)) << '\n';
  }
  return os.str();
}

std::string unknown_consumption_csv(const UnknownNetworkResult& unknown) {
  const Matrix& predicted = unknown.predicted.pricing.q;
  std::ostringstream os;
  os << "customer,period,q_predicted,q_realized,q_delivered\n";
  for (Eigen::Index t = 0; t < predicted.cols(); ++t) {
    for (Eigen::Index i = 0; i < predicted.rows(); ++i) {
      os << i + 1 << ',' << t + 1 << ',' << r(predicted(i, t)) << ',' << r(unknown.realized.q(i, t)) << ','
         << r(unknown.realized.q_delivered(i, t)) << '\n';
    }
  }
  return os.str();
}

std::string schedule_csv(const MaintenanceSchedule& schedule) {
  std::ostringstream os;
  os << "unit,period,x,s\n";
  for (int j = 0; j < schedule.units(); ++j) {
    for (int t = 0; t < schedule.periods(); ++t) {
      os << j + 1 << ',' << t + 1 << ',' << schedule.x(j, t) << ',' << schedule.s(j, t) << '\n';
    }
  }
  return os.str();
}

std::string deterioration_csv(const MaintenanceSchedule& schedule, std::span<const int> effective) {
  std::ostringstream os;
  os << "unit,period,s,threshold\n";
  for (int j = 0; j < schedule.units(); ++j) {
    for (int t = 0; t < schedule.periods(); ++t) {
      os << j + 1 << ',' << t + 1 << ',' << schedule.s(j, t) << ',' << effective[static_cast<std::size_t>(j)]
         << '\n';
    }
  }
  return os.str();
}

std::string revenue_table_csv(std::span<const RevenueTable> tables) {
  std::ostringstream os;
  os << "period,capacity,revenue\n";
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (const auto& e : tables[t].entries()) {
      os << t + 1 << ',' << r(e.capacity) << ',' << r(e.solution.revenue) << '\n';
    }
  }
  return os.str();
}

std::vector<std::filesystem::path> write_report(const CaseStudyResult& result, const RunManifest& manifest,
                                                const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  auto put = [&](const fs::path& rel, const std::string& text) {
    const fs::path path = out_dir / rel;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    write_file(path, text);
    written.push_back(path);
  };

  put("manifest.json", manifest_json(manifest, result.config));
  put("profit_summary.csv", profit_summary_csv(result));
  put("comparison.csv", comparison_csv(result));
  put("scenarios.csv", scenarios_csv(result.scenarios));
  put("demand.csv", demand_csv(result.config.network));

  auto put_mode = [&](const std::string& dir, const SolutionReport& rep, const std::string& consumption,
                      std::span<const RevenueTable> tables) {
    put(fs::path(dir) / "prices.csv", prices_csv(rep.pricing.phi));
    put(fs::path(dir) / "consumption.csv", consumption);
    put(fs::path(dir) / "schedule.csv", schedule_csv(rep.schedule));
    put(fs::path(dir) / "deterioration.csv", deterioration_csv(rep.schedule, result.effective));
    put(fs::path(dir) / "revenue_table.csv", revenue_table_csv(tables));
  };
  if (result.known) put_mode("known", *result.known, consumption_csv(result.known->pricing.q), result.known_tables);
  if (result.unknown) {
    put_mode("unknown", result.unknown->predicted, unknown_consumption_csv(*result.unknown), result.unknown_tables);
  }
  if (result.baseline) {
    put_mode("baseline", *result.baseline, consumption_csv(result.baseline->pricing.q), result.known_tables);
  }
  return written;
}

}  // namespace netmaint
