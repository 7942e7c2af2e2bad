#include "rlfa/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "rlfa/moe.hpp"

namespace rlfa {

namespace {

constexpr Eigen::Index kText = 0;
constexpr Eigen::Index kNumeric = 1;
constexpr Eigen::Index kBehavior = 2;
constexpr Eigen::Index kSensitive0 = kSensitiveBegin;

Vector unit_vector(Eigen::Index n, Eigen::Index i) {
  Vector v = Vector::Zero(n);
  v[i] = 1.0;
  return v;
}

double checked_quantile(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError(std::string("scenario targets unreachable: ") + what);
  }
  return normal_quantile(p);
}

// Pattern A fraud shifts text and numeric by the same offset, so a single-feature
// expert with its cut at offset/2 is correct with probability Phi(offset / (2 noise)).
double pattern_a_offset(const ScenarioSpec& spec) {
  return 2.0 * spec.noise * checked_quantile(spec.incumbent_pre_drift_accuracy, "pre-drift accuracy");
}

void check_band(const char* what, double value, double lo, double hi) {
  if (value < lo || value > hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "scenario calibration failed: %s accuracy %.4f outside [%.2f, %.2f]",
                  what, value, lo, hi);
    throw ConfigError(buf);
  }
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ComputationError("normal_quantile needs p in (0, 1)");
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ScenarioStream make_scenario_stream(const ScenarioSpec& spec, std::uint64_t seed,
                                    std::int64_t samples_per_cycle, std::int64_t total_cycles) {
  const double r = spec.fraud_rate;
  const double sigma = spec.noise;
  const double mu_a = pattern_a_offset(spec);
  const double acc_a = normal_cdf(mu_a / (2.0 * sigma));

  // The incumbent's cut sits at mu_a/2 on an unshifted feature for B traffic.
  const double inc_on_b = (1.0 - r) * acc_a + r * (1.0 - acc_a);
  const double b_share = (acc_a - spec.incumbent_post_drift_accuracy) / (acc_a - inc_on_b);
  if (!(b_share > 0.0 && b_share < 1.0)) {
    throw ConfigError("scenario targets unreachable: post-drift pattern-B share out of (0, 1)");
  }

  // Candidate accuracy needed on B traffic at each tier.
  const double need_restricted = (spec.candidate_shadow_accuracy - (1.0 - b_share) * acc_a) / b_share;
  const double need_full = (spec.candidate_full_accuracy - (1.0 - b_share) * acc_a) / b_share;

  // Restricted: score = x_behavior ~ N(mu_2 * label, sigma^2).
  const double theta = spec.behavior_threshold * sigma;
  const double legit_r = normal_cdf(theta / sigma);
  const double mu_2 =
      theta + sigma * checked_quantile((need_restricted - (1.0 - r) * legit_r) / r, "shadow accuracy");
  // Full: score = x_behavior + x_sensitive ~ N((mu_2 + mu_3) * label, 2 sigma^2).
  const double sd_full = sigma * std::numbers::sqrt2;
  const double legit_f = normal_cdf(theta / sd_full);
  const double mu_3 =
      theta + sd_full * checked_quantile((need_full - (1.0 - r) * legit_f) / r, "full accuracy") - mu_2;

  PatternSpec a;
  a.name = "A";
  a.fraud_rate = r;
  a.noise = sigma;
  a.fraud_offset = Vector::Zero(kFeatureDim);
  a.fraud_offset[kText] = mu_a;
  a.fraud_offset[kNumeric] = mu_a;
  a.salience = (Vector(kModalityDim) << 0.35, 0.45, 0.20).finished();
  a.jitter = spec.jitter;

  PatternSpec b;
  b.name = "B";
  b.fraud_rate = r;
  b.noise = sigma;
  b.fraud_offset = Vector::Zero(kFeatureDim);
  b.fraud_offset[kBehavior] = mu_2;
  b.fraud_offset[kSensitive0] = mu_3;
  b.salience = (Vector(kModalityDim) << 0.15, 0.15, 0.70).finished();
  b.jitter = spec.jitter;

  ScenarioStream out;
  out.post_drift_b_share = b_share;
  out.stream.seed = seed;
  out.stream.samples_per_cycle = samples_per_cycle;
  out.stream.total_cycles = total_cycles;
  out.stream.patterns = {a, b};
  out.stream.schedule.segments = {
      {0, {{"A", 1.0}}},
      {spec.drift_cycle, {{"A", 1.0 - b_share}, {"B", b_share}}},
  };
  return out;
}

ScenarioAgents make_scenario_agents(const ScenarioSpec& spec, const ScenarioStream& stream,
                                    CalibrationReport* report) {
  const PatternSpec& a = stream.stream.pattern("A");
  const PatternSpec& b = stream.stream.pattern("B");
  const double cut_a = a.fraud_offset[kNumeric] / 2.0;

  const Expert text{unit_vector(kModalityDim, kText), unit_vector(kFeatureDim, kText), cut_a};
  const Expert numeric{unit_vector(kModalityDim, kNumeric), unit_vector(kFeatureDim, kNumeric), cut_a};
  Vector behavior_w = Vector::Zero(kFeatureDim);
  behavior_w[kBehavior] = 1.0;
  behavior_w[kSensitive0] = 1.0;
  const Expert behavior{unit_vector(kModalityDim, kBehavior), behavior_w, spec.behavior_threshold * b.noise};

  ScenarioAgents out;
  out.incumbent.name = "incumbent";
  out.incumbent.skills = {"numeric", "text"};
  out.incumbent.moe = make_moe({text, numeric});
  out.incumbent.cost_per_sample = 1.0;
  out.incumbent.handoff_reliability = 0.995;
  out.incumbent.set_status(AgentStatus::Active);

  out.candidate.name = "pattern-b-specialist";
  out.candidate.skills = {"behavior", "numeric", "pattern-B"};
  out.candidate.moe = make_moe({numeric, behavior});
  out.candidate.cost_per_sample = 1.1;
  out.candidate.handoff_reliability = 0.99;
  out.candidate.performance = 0.85;
  out.candidate.set_status(AgentStatus::Released);

  const CalibrationReport m = measure_scenario_agents(spec, stream, out);
  if (report) *report = m;
  check_band("incumbent pattern-A", m.incumbent_pattern_a, spec.incumbent_pre_drift_accuracy - 0.02,
             spec.incumbent_pre_drift_accuracy + 0.02);
  check_band("incumbent post-drift", m.incumbent_mixture, spec.incumbent_post_drift_accuracy - 0.03,
             spec.incumbent_post_drift_accuracy + 0.03);
  check_band("candidate shadow", m.candidate_shadow_mixture, spec.candidate_shadow_accuracy - 0.03,
             spec.candidate_shadow_accuracy + 0.03);
  check_band("candidate full-tier", m.candidate_full_mixture, 0.90, 1.0);
  return out;
}

CalibrationReport measure_scenario_agents(const ScenarioSpec& spec, const ScenarioStream& stream,
                                          const ScenarioAgents& agents) {
  const auto& segs = stream.stream.schedule.segments;
  const auto pure_a = generate_calibration_set(stream.stream, segs.front().mixture,
                                               spec.calibration_seed, spec.calibration_samples);
  const auto mixed = generate_calibration_set(stream.stream, segs.back().mixture,
                                              spec.calibration_seed + 1, spec.calibration_samples);
  CalibrationReport r;
  r.incumbent_pattern_a = measure_accuracy(agents.incumbent, AccessTier::Full, pure_a);
  r.incumbent_mixture = measure_accuracy(agents.incumbent, AccessTier::Full, mixed);
  r.candidate_shadow_mixture = measure_accuracy(agents.candidate, AccessTier::Restricted, mixed);
  r.candidate_full_mixture = measure_accuracy(agents.candidate, AccessTier::Full, mixed);
  return r;
}

}  // namespace rlfa
