// netmaint: batch front end for the joint pricing / maintenance planner.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netmaint/config.hpp"
#include "netmaint/errors.hpp"
#include "netmaint/miqp.hpp"
#include "netmaint/pipeline.hpp"
#include "netmaint/report.hpp"
#include "netmaint/version.hpp"

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> scenarios;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Override the config's rng_seed");
  cmd->add_option("--scenarios", c.scenarios, "Override the config's k_scenarios")->check(CLI::PositiveNumber);
}

netmaint::RunOptions options_for(const Common& c, const std::string& mode) {
  netmaint::RunOptions opt;
  opt.seed = c.seed;
  opt.scenarios = c.scenarios;
  if (mode != "all") {
    opt.known = mode == "known";
    opt.unknown = mode == "unknown";
    opt.baseline = mode == "baseline";
  }
  return opt;
}

int run(const Common& c, const std::string& mode, const std::string& out) {
  const auto config = netmaint::load_config(c.config);
  const auto result = netmaint::run_case_study(config, options_for(c, mode));
  netmaint::write_report(result, netmaint::make_manifest(c.config, result), out);
  std::cout << netmaint::profit_summary_csv(result);
  return 0;
}

int compare(const Common& c) {
  const auto config = netmaint::load_config(c.config);
  const auto result = netmaint::run_case_study(config, options_for(c, "all"));
  std::cout << netmaint::comparison_csv(result);
  return 0;
}

int export_miqp(const Common& c, const std::string& out, bool unknown, bool effective_only) {
  const auto config = netmaint::load_config(c.config);
  const auto set = netmaint::sample_scenarios(config.fleet, c.scenarios.value_or(config.horizon.k_scenarios),
                                              c.seed.value_or(config.horizon.rng_seed));
  const netmaint::Matrix thresholds = effective_only ? netmaint::Matrix(set.effective.cast<double>()) : set.samples;
  const auto model = netmaint::export_miqp(config.network, config.fleet, thresholds, !unknown);
  const std::string text = model.to_lp();
  if (out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os || !(os << text) || !os.flush()) throw netmaint::IoError("cannot write " + out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint network pricing and predictive maintenance planner"};
  app.set_version_flag("--version", std::string(netmaint::kVersion));
  app.require_subcommand(1);

  Common common;
  std::string mode = "all";
  std::string out;
  bool unknown = false;
  bool effective_only = false;

  auto* run_cmd = app.add_subcommand("run", "Run the case study and write reports");
  add_common(run_cmd, common);
  run_cmd->add_option("--out", out, "Output directory")->required();
  run_cmd->add_option("--mode", mode, "Which pipelines to run")
      ->check(CLI::IsMember({"known", "unknown", "baseline", "all"}));

  auto* compare_cmd = app.add_subcommand("compare", "Print the profit comparison of all modes");
  add_common(compare_cmd, common);

  auto* export_cmd = app.add_subcommand("export-miqp", "Write the joint model in CPLEX LP format");
  add_common(export_cmd, common);
  export_cmd->add_option("--out", out, "Output file, '-' for stdout")->required();
  export_cmd->add_flag("--unknown-network", unknown, "Use the graph-blind demand model");
  export_cmd->add_flag("--effective-only", effective_only, "One threshold row per unit instead of K");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run(common, mode, out);
    if (compare_cmd->parsed()) return compare(common);
    return export_miqp(common, out, unknown, effective_only);
  } catch (const netmaint::Error& e) {
    std::cerr << "error: " << e.category() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 3;
  }
}
