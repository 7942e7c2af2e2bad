#include "rlfa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rlfa/moe.hpp"
#include "rlfa/pipeline.hpp"
#include "rlfa/random.hpp"

namespace rlfa {

std::size_t DriftSchedule::segment_index(std::int64_t cycle) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].start_cycle <= cycle) idx = i;
  }
  return idx;
}

const PatternSpec& StreamConfig::pattern(const std::string& name) const {
  for (const auto& p : patterns) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown pattern '" + name + "'");
}

void validate_stream(const StreamConfig& cfg) {
  if (cfg.samples_per_cycle < 1) throw ConfigError("samples_per_cycle must be >= 1");
  if (cfg.total_cycles < 1) throw ConfigError("total_cycles must be >= 1");
  std::set<std::string> names;
  for (const auto& p : cfg.patterns) {
    if (!names.insert(p.name).second) throw ConfigError("duplicate pattern '" + p.name + "'");
    if (!(p.fraud_rate > 0.0 && p.fraud_rate < 1.0)) {
      throw ConfigError("pattern '" + p.name + "': fraud_rate must lie in (0, 1)");
    }
    if (!(p.noise > 0.0) || !std::isfinite(p.noise)) {
      throw ConfigError("pattern '" + p.name + "': noise must be positive");
    }
    if (p.fraud_offset.size() != kFeatureDim || !p.fraud_offset.allFinite()) {
      throw ConfigError("pattern '" + p.name + "': fraud_offset needs " +
                        std::to_string(kFeatureDim) + " finite entries");
    }
    if (p.salience.size() != kModalityDim || (p.salience.array() < 0.0).any() ||
        !(p.salience.sum() > 0.0)) {
      throw ConfigError("pattern '" + p.name + "': salience needs " +
                        std::to_string(kModalityDim) + " non-negative entries");
    }
    if (!(p.jitter >= 0.0) || !std::isfinite(p.jitter)) {
      throw ConfigError("pattern '" + p.name + "': jitter must be >= 0");
    }
  }
  if (cfg.schedule.segments.empty()) throw ConfigError("schedule needs at least one segment");
  if (cfg.schedule.segments.front().start_cycle != 0) {
    throw ConfigError("first schedule segment must start at cycle 0");
  }
  for (std::size_t i = 0; i < cfg.schedule.segments.size(); ++i) {
    const auto& seg = cfg.schedule.segments[i];
    if (i > 0 && seg.start_cycle <= cfg.schedule.segments[i - 1].start_cycle) {
      throw ConfigError("schedule segments must have strictly increasing start_cycle");
    }
    if (seg.mixture.empty()) throw ConfigError("schedule segment has an empty mixture");
    double total = 0.0;
    for (const auto& m : seg.mixture) {
      if (!names.contains(m.pattern)) throw ConfigError("mixture references unknown pattern '" + m.pattern + "'");
      if (!(m.weight > 0.0)) throw ConfigError("mixture weights must be positive");
      total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("mixture weights of segment starting at cycle " +
                        std::to_string(seg.start_cycle) + " must sum to 1");
    }
  }
}

DataSample draw_sample(const StreamConfig& cfg, std::span<const MixtureEntry> mixture,
                       std::uint64_t seed, std::uint64_t seq, std::uint64_t domain_tag) {
  random::CounterStream rng(seed, random::Domain::Stream, domain_tag, seq);

  const double pick = rng.unit();
  double acc = 0.0;
  const MixtureEntry* chosen = &mixture.back();
  for (const auto& m : mixture) {
    acc += m.weight;
    if (pick < acc) {
      chosen = &m;
      break;
    }
  }
  const PatternSpec& p = cfg.pattern(chosen->pattern);

  DataSample s;
  s.seq = seq;
  s.pattern = p.name;
  s.label = rng.unit() < p.fraud_rate;
  s.features.resize(kFeatureDim);
  for (Eigen::Index i = 0; i < kFeatureDim; ++i) s.features[i] = p.noise * rng.normal();
  if (s.label) s.features += p.fraud_offset;

  s.modality.resize(kModalityDim);
  for (Eigen::Index i = 0; i < kModalityDim; ++i) {
    const double u = rng.unit();
    s.modality[i] = std::max(0.01, p.salience[i] + p.jitter * (2.0 * u - 1.0));
  }
  s.modality /= s.modality.sum();
  return s;
}

std::vector<DataSample> generate_cycle(const StreamConfig& cfg, std::int64_t cycle) {
  if (cycle < 0 || cycle >= cfg.total_cycles) {
    throw ConfigError("cycle " + std::to_string(cycle) + " outside [0, " +
                      std::to_string(cfg.total_cycles) + ")");
  }
  const DriftSegment& seg = cfg.schedule.at(cycle);
  const auto n = static_cast<std::uint64_t>(cfg.samples_per_cycle);
  std::vector<DataSample> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(draw_sample(cfg, seg.mixture, cfg.seed, static_cast<std::uint64_t>(cycle) * n + i, 0));
  }
  return out;
}

std::vector<DataSample> generate_calibration_set(const StreamConfig& cfg,
                                                 std::span<const MixtureEntry> mixture,
                                                 std::uint64_t seed, std::int64_t n) {
  std::vector<DataSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    out.push_back(draw_sample(cfg, mixture, seed, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(random::Domain::Calibration)));
  }
  return out;
}

double measure_accuracy(const Agent& agent, AccessTier tier, std::span<const DataSample> samples) {
  if (samples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& s : samples) {
    const SampleView v = redact(s, tier);
    if (decide(agent.moe, v.features, v.modality, false).verdict == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

}  // namespace rlfa
