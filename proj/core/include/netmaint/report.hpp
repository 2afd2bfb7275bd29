#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "netmaint/pipeline.hpp"

namespace netmaint {

/// Everything that determines a run's output bytes. The output directory is
/// deliberately not part of it.
struct RunManifest {
  std::string config_path;
  std::uint64_t seed = 0;
  int scenarios = 0;
  std::vector<std::string> modes;  // subset of known, unknown, baseline
  std::string version;
};

RunManifest make_manifest(const std::string& config_path, const CaseStudyResult& result);

std::string manifest_json(const RunManifest& manifest, const ProblemConfig& config);

// Individual CSV documents (schemas in docs/outputs.md).
std::string profit_summary_csv(const CaseStudyResult& result);
std::string comparison_csv(const CaseStudyResult& result);
std::string demand_csv(const CustomerNetwork& net);
std::string prices_csv(const Matrix& phi);
std::string consumption_csv(const Matrix& q);
std::string unknown_consumption_csv(const UnknownNetworkResult& unknown);
std::string schedule_csv(const MaintenanceSchedule& schedule);
std::string deterioration_csv(const MaintenanceSchedule& schedule, std::span<const int> effective);
std::string revenue_table_csv(std::span<const RevenueTable> tables);

/// Writes the full report tree under `out_dir` (created if needed) and
/// returns the paths written, in order. Throws IoError.
std::vector<std::filesystem::path> write_report(const CaseStudyResult& result, const RunManifest& manifest,
                                                const std::filesystem::path& out_dir);

}  // namespace netmaint
