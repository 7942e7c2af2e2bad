#pragma once

#include <cstdint>

#include "rlfa/domain.hpp"
#include "rlfa/simulator.hpp"

namespace rlfa {

/// Targets for the drift-and-replacement scenario. Pattern A dominates before
/// drift; afterwards a share of pattern B traffic appears that the incumbent
/// cannot see. The numbers are realized by construction: offsets and the
/// post-drift mixture are solved in closed form from the normal CDF.
struct ScenarioSpec {
  double incumbent_pre_drift_accuracy = 0.95;
  double incumbent_post_drift_accuracy = 0.75;
  double candidate_shadow_accuracy = 0.88;
  double candidate_full_accuracy = 0.925;

  double fraud_rate = 0.5;
  double noise = 1.0;
  // Cut of the candidate's pattern-B expert, in units of noise.
  double behavior_threshold = 1.5;
  double jitter = 0.05;

  std::int64_t drift_cycle = 10;
  std::uint64_t calibration_seed = 0x5EC7104ULL;
  std::int64_t calibration_samples = 10000;
};

struct ScenarioStream {
  StreamConfig stream;
  double post_drift_b_share = 0.0;
};

struct ScenarioAgents {
  Agent incumbent;
  Agent candidate;
};

/// Measured accuracies from the construction self-check.
struct CalibrationReport {
  double incumbent_pattern_a = 0.0;
  double incumbent_mixture = 0.0;
  double candidate_shadow_mixture = 0.0;
  double candidate_full_mixture = 0.0;
};

double normal_cdf(double x);
/// Inverse of normal_cdf by bisection; p must lie in (0, 1).
double normal_quantile(double p);

/// Patterns A and B plus a two-segment drift schedule. Throws ConfigError when
/// the targets are not realizable.
ScenarioStream make_scenario_stream(const ScenarioSpec& spec, std::uint64_t seed,
                                    std::int64_t samples_per_cycle, std::int64_t total_cycles);

/// Builds the incumbent and the pattern-B candidate, then checks their measured
/// accuracies on fresh calibration samples. Throws ConfigError when a measurement
/// falls outside its band.
ScenarioAgents make_scenario_agents(const ScenarioSpec& spec, const ScenarioStream& stream,
                                    CalibrationReport* report = nullptr);

CalibrationReport measure_scenario_agents(const ScenarioSpec& spec, const ScenarioStream& stream,
                                          const ScenarioAgents& agents);

}  // namespace rlfa
