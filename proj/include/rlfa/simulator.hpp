#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlfa/domain.hpp"

namespace rlfa {

/// Legit samples draw every feature from N(0, noise^2). Fraud samples add
/// `fraud_offset`. Modality is `salience` perturbed by +-jitter and renormalized.
struct PatternSpec {
  std::string name;
  double fraud_rate = 0.5;
  double noise = 1.0;
  Vector fraud_offset = Vector::Zero(kFeatureDim);
  Vector salience = Vector::Constant(kModalityDim, 1.0 / kModalityDim);
  double jitter = 0.0;
};

struct MixtureEntry {
  std::string pattern;
  double weight = 1.0;
};

struct DriftSegment {
  std::int64_t start_cycle = 0;
  std::vector<MixtureEntry> mixture;
};

struct DriftSchedule {
  std::vector<DriftSegment> segments;

  std::size_t segment_index(std::int64_t cycle) const;
  const DriftSegment& at(std::int64_t cycle) const { return segments[segment_index(cycle)]; }
};

struct StreamConfig {
  std::uint64_t seed = 42;
  std::int64_t samples_per_cycle = 1000;
  std::int64_t total_cycles = 30;
  std::vector<PatternSpec> patterns;
  DriftSchedule schedule;

  const PatternSpec& pattern(const std::string& name) const;
};

void validate_stream(const StreamConfig& cfg);

/// Draws one sample. The draw sequence per sample is fixed: pattern pick, label,
/// kFeatureDim normals, kModalityDim jitter uniforms.
DataSample draw_sample(const StreamConfig& cfg, std::span<const MixtureEntry> mixture,
                       std::uint64_t seed, std::uint64_t seq, std::uint64_t domain_tag);

/// Deterministic and random access in `cycle`.
std::vector<DataSample> generate_cycle(const StreamConfig& cfg, std::int64_t cycle);

/// Independent sample set for calibration checks (separate generator domain).
std::vector<DataSample> generate_calibration_set(const StreamConfig& cfg,
                                                 std::span<const MixtureEntry> mixture,
                                                 std::uint64_t seed, std::int64_t n);

/// Fraction of samples the agent classifies correctly, deciding at `tier`.
double measure_accuracy(const Agent& agent, AccessTier tier, std::span<const DataSample> samples);

}  // namespace rlfa
