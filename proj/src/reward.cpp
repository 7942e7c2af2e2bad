#include "rlfa/reward.hpp"

#include <algorithm>
#include <cmath>

namespace rlfa {

namespace {
double ratio_or_zero(double num, double den) { return den == 0.0 ? 0.0 : num / den; }
}  // namespace

void validate_reward(const RewardWeights& w, const RewardConfig& cfg) {
  for (double v : {w.alpha, w.beta, w.gamma, w.delta}) {
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("reward weights must be finite and >= 0");
  }
  if (!std::isfinite(cfg.baseline_cost_per_sample) || cfg.baseline_cost_per_sample <= 0.0) {
    throw ConfigError("baseline_cost_per_sample must be positive");
  }
  if (!std::isfinite(cfg.fp_budget) || cfg.fp_budget < 0.0 || cfg.fp_budget > 1.0) {
    throw ConfigError("fp_budget must lie in [0, 1]");
  }
}

double compute_reward(const RewardWeights& w, const RewardComponents& c) {
  for (double v : {w.alpha, w.beta, w.gamma, w.delta, c.accuracy, c.synergy, c.efficiency,
                   c.penalty}) {
    if (!std::isfinite(v)) throw ComputationError("non-finite reward input");
  }
  return w.alpha * c.accuracy + w.beta * c.synergy + w.gamma * c.efficiency - w.delta * c.penalty;
}

RewardComponents compute_components(const Agent& agent, const PerformanceLog& log,
                                    const RewardConfig& cfg) {
  const AgentWindow& w = log.window(agent.id);
  RewardComponents c;
  c.accuracy = f1_breakdown(w).f1;
  c.synergy = ratio_or_zero(static_cast<double>(w.handoffs_succeeded),
                            static_cast<double>(w.handoffs_attempted));
  if (w.samples_seen > 0) {
    const double samples = static_cast<double>(w.samples_seen);
    c.efficiency = w.cost_accumulated > 0.0
                       ? std::clamp(cfg.baseline_cost_per_sample * samples / w.cost_accumulated, 0.0, 1.0)
                       : 1.0;
    const double fp_rate = ratio_or_zero(static_cast<double>(w.false_positives),
                                         static_cast<double>(w.false_positives + w.true_negatives));
    c.penalty = std::min(1.0, static_cast<double>(w.violations) / samples +
                                  std::max(0.0, fp_rate - cfg.fp_budget));
  }
  c.accuracy = std::clamp(c.accuracy, 0.0, 1.0);
  c.synergy = std::clamp(c.synergy, 0.0, 1.0);
  return c;
}

}  // namespace rlfa
