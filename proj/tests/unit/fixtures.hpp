#pragma once

#include <initializer_list>

#include "rlfa/moe.hpp"
#include "rlfa/simulator.hpp"

namespace rlfa::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

/// Agent with one expert scoring feature `feature` against `threshold`.
inline Agent simple_agent(std::uint64_t id, AgentStatus status, double performance = 0.0,
                          Eigen::Index feature = 0, double threshold = 0.5) {
  Agent a;
  a.id = AgentId{id};
  a.name = "agent-" + std::to_string(id);
  Vector w = Vector::Zero(kFeatureDim);
  w[feature] = 1.0;
  a.moe = make_moe({Expert{Vector::Constant(kModalityDim, 1.0), w, threshold}});
  a.performance = performance;
  a.set_status(status);
  return a;
}

inline DataSample make_sample(std::uint64_t seq, Vector features, bool label) {
  DataSample s;
  s.seq = seq;
  s.features = std::move(features);
  s.modality = Vector::Constant(kModalityDim, 1.0 / kModalityDim);
  s.label = label;
  s.pattern = "A";
  return s;
}

/// One pattern whose fraud samples shift feature 0.
inline StreamConfig single_pattern_stream(std::uint64_t seed, std::int64_t samples, std::int64_t cycles,
                                          double offset = 3.0) {
  StreamConfig cfg;
  cfg.seed = seed;
  cfg.samples_per_cycle = samples;
  cfg.total_cycles = cycles;
  PatternSpec p;
  p.name = "A";
  p.fraud_rate = 0.5;
  p.fraud_offset = Vector::Zero(kFeatureDim);
  p.fraud_offset[0] = offset;
  p.salience = vec({0.5, 0.3, 0.2});
  p.jitter = 0.05;
  cfg.patterns = {p};
  cfg.schedule.segments = {{0, {{"A", 1.0}}}};
  return cfg;
}

}  // namespace rlfa::test
