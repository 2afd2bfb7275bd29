#include "netmaint/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netmaint/errors.hpp"
#include "netmaint/format.hpp"
#include "netmaint/rng.hpp"

namespace netmaint {
namespace {

double draw_threshold(Rng& rng, double mu, double sigma) {
  if (sigma == 0.0) return mu;
  for (;;) {
    const double x = rng.normal(mu, sigma);
    if (x > kThresholdFloor) return x;
  }
}

}  // namespace

int effective_threshold(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("no samples");
  return static_cast<int>(std::floor(*std::min_element(samples.begin(), samples.end())));
}

ScenarioSet scenario_set_from_samples(Matrix samples, std::uint64_t seed) {
  if (samples.rows() < 1 || samples.cols() < 1) throw DomainError("empty scenario set");
  if (!(samples.array() > 1.0).all() || !samples.allFinite()) {
    throw DomainError("threshold samples must be finite and exceed 1");
  }
  ScenarioSet set;
  set.effective.resize(samples.rows());
  for (Eigen::Index j = 0; j < samples.rows(); ++j) {
    set.effective(j) = static_cast<int>(std::floor(samples.row(j).minCoeff()));
  }
  set.samples = std::move(samples);
  set.seed = seed;
  return set;
}

ScenarioSet sample_scenarios(const UnitFleet& fleet, int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("scenario count must be at least 1");
  Matrix samples(fleet.size(), k);
  for (int j = 0; j < fleet.size(); ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    for (int s = 0; s < k; ++s) samples(j, s) = draw_threshold(rng, fleet.mu()(j), fleet.sigma()(j));
  }
  return scenario_set_from_samples(std::move(samples), seed);
}

int scenario_count_hint(double alpha, double beta, int decision_dims) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (decision_dims < 0) throw DomainError("decision_dims must be nonnegative");
  const double k = (2.0 / alpha) * (std::log(1.0 / beta) + decision_dims);
  // Absorb rounding in log() so exact integers are not bumped up by one.
  return std::max(1, static_cast<int>(std::ceil(k * (1.0 - 1e-12))));
}

double empirical_violation_rate(const MaintenanceSchedule& schedule, const UnitFleet& fleet,
                                int m_trials, std::uint64_t seed) {
  if (schedule.units() != fleet.size()) throw DimensionError("schedule and fleet disagree on J");
  if (m_trials < 1) throw DomainError("m_trials must be at least 1");

  const IntMatrix s = deterioration_trace(schedule.x);
  IntVector peak(fleet.size());
  for (int j = 0; j < fleet.size(); ++j) {
    peak(j) = schedule.periods() > 0 ? s.row(j).head(schedule.periods()).maxCoeff() : 0;
  }

  int violated = 0;
  for (int m = 0; m < m_trials; ++m) {
    Rng rng(seed + static_cast<std::uint64_t>(m));
    bool hit = false;
    for (int j = 0; j < fleet.size(); ++j) {
      const double threshold = draw_threshold(rng, fleet.mu()(j), fleet.sigma()(j));
      hit = hit || peak(j) > threshold;
    }
    violated += hit ? 1 : 0;
  }
  return static_cast<double>(violated) / m_trials;
}

std::string scenarios_csv(const ScenarioSet& set) {
  std::ostringstream os;
  os << "unit,k,sample\n";
  for (Eigen::Index j = 0; j < set.samples.rows(); ++j) {
    for (Eigen::Index k = 0; k < set.samples.cols(); ++k) {
      os << j + 1 << ',' << k + 1 << ',' << format_real(set.samples(j, k)) << '\n';
    }
  }
  os << "effective";
  for (Eigen::Index j = 0; j < set.effective.size(); ++j) os << ',' << set.effective(j);
  os << '\n';
  return os.str();
}

}  // namespace netmaint
