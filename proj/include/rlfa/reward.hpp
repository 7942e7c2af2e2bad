#pragma once

#include "rlfa/domain.hpp"
#include "rlfa/metrics.hpp"

namespace rlfa {

struct RewardWeights {
  double alpha = 1.0;   // accuracy
  double beta = 0.25;   // synergy
  double gamma = 0.25;  // efficiency
  double delta = 0.5;   // penalty
};

struct RewardConfig {
  double baseline_cost_per_sample = 1.0;
  double fp_budget = 0.05;
};

/// Each component lies in [0, 1].
struct RewardComponents {
  double accuracy = 0.0;
  double synergy = 0.0;
  double efficiency = 0.0;
  double penalty = 0.0;
};

void validate_reward(const RewardWeights& w, const RewardConfig& cfg);

/// alpha*accuracy + beta*synergy + gamma*efficiency - delta*penalty
double compute_reward(const RewardWeights& w, const RewardComponents& c);

RewardComponents compute_components(const Agent& agent, const PerformanceLog& log,
                                    const RewardConfig& cfg);

}  // namespace rlfa
