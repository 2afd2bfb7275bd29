#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "netmaint/model.hpp"

namespace netmaint {

struct ProblemConfig {
  CustomerNetwork network;
  UnitFleet fleet;
  Horizon horizon;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

/// Parses a config document (JSON, `//` and `/* */` comments allowed).
///
/// Keys: n, a[N], w[N][N], either b[N][T] or b_constant[N], mu[J], sigma[J],
/// cost[J], q_max[J], t_count, alpha, k_scenarios, rng_seed. `j_count` is
/// optional and checked against the unit arrays when present.
///
/// Throws ParseError for malformed documents and ValidationError when a value
/// breaks an invariant.
ProblemConfig parse_config(std::string_view text);

ProblemConfig load_config(const std::filesystem::path& path);

/// Serializes with shortest round-trip number formatting. A b matrix whose
/// columns are all equal is written as `b_constant`.
std::string write_config(const ProblemConfig& config);

void save_config(const ProblemConfig& config, const std::filesystem::path& path);

}  // namespace netmaint
