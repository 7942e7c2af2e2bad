#pragma once

#include <string>

#include "rlfa/domain.hpp"

namespace rlfa {

struct ExpertScore {
  double score = 0.0;
  bool verdict = false;
};

/// Builds a mixture with uniform gate weights.
MoEState make_moe(std::vector<Expert> experts, double learning_rate = 0.05);

/// Throws ConfigError unless the mixture is well formed for the given dimensions.
void validate_moe(const MoEState& moe, Eigen::Index modality_dim, Eigen::Index feature_dim);

/// Top-1 routing: argmax_e gate_weights[e] * <profile[e], modality>, ties to the lowest index.
template <typename Derived>
Eigen::Index gate(const MoEState& moe, const Eigen::MatrixBase<Derived>& modality) {
  if (moe.experts.empty()) throw ConfigError("mixture has no experts");
  Eigen::Index best = 0;
  double best_affinity = 0.0;
  for (std::size_t e = 0; e < moe.experts.size(); ++e) {
    const auto& profile = moe.experts[e].profile;
    if (profile.size() != modality.size()) {
      throw ConfigError("modality length " + std::to_string(modality.size()) +
                        " does not match expert profile length " + std::to_string(profile.size()));
    }
    const auto idx = static_cast<Eigen::Index>(e);
    const double affinity = moe.gate_weights[idx] * profile.dot(modality);
    if (e == 0 || affinity > best_affinity) {
      best = idx;
      best_affinity = affinity;
    }
  }
  return best;
}

template <typename Derived>
ExpertScore expert_score(const Expert& expert, const Eigen::MatrixBase<Derived>& features) {
  if (expert.weight_vector.size() != features.size()) {
    throw ConfigError("feature length " + std::to_string(features.size()) +
                      " does not match expert weight length " +
                      std::to_string(expert.weight_vector.size()));
  }
  const double score = expert.weight_vector.dot(features);
  return {score, score >= expert.threshold};
}

/// Gate then score. The decision depends only on the mixture and the two vectors passed in.
template <typename F, typename M>
Decision decide(const MoEState& moe, const Eigen::MatrixBase<F>& features,
                const Eigen::MatrixBase<M>& modality, bool shadow) {
  const Eigen::Index e = gate(moe, modality);
  const ExpertScore s = expert_score(moe.experts[static_cast<std::size_t>(e)], features);
  return Decision{s.verdict, s.score, e, shadow};
}

/// Multiplicative-weights step on one gate entry followed by renormalization:
/// w[e] <- w[e] * exp(learning_rate * sample_reward).
void rl_update(MoEState& moe, Eigen::Index expert_used, double sample_reward);

/// Resets gate weights to uniform. Only valid for Probationary agents.
void moe_init(Agent& agent);

}  // namespace rlfa
