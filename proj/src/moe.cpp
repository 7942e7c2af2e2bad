#include "rlfa/moe.hpp"

#include <cmath>
#include <stdexcept>

namespace rlfa {

MoEState make_moe(std::vector<Expert> experts, double learning_rate) {
  MoEState moe;
  const auto n = static_cast<Eigen::Index>(experts.size());
  moe.experts = std::move(experts);
  moe.gate_weights = n > 0 ? Vector::Constant(n, 1.0 / static_cast<double>(n)) : Vector{};
  moe.learning_rate = learning_rate;
  return moe;
}

void validate_moe(const MoEState& moe, Eigen::Index modality_dim, Eigen::Index feature_dim) {
  if (moe.experts.empty()) throw ConfigError("mixture needs at least one expert");
  if (moe.gate_weights.size() != static_cast<Eigen::Index>(moe.experts.size())) {
    throw ConfigError("gate_weights length must equal the number of experts");
  }
  if (!(moe.learning_rate > 0.0) || !std::isfinite(moe.learning_rate)) {
    throw ConfigError("learning_rate must be positive and finite");
  }
  if (!moe.gate_weights.allFinite() || (moe.gate_weights.array() <= 0.0).any()) {
    throw ConfigError("gate_weights must be positive");
  }
  if (std::abs(moe.gate_weights.sum() - 1.0) > 1e-9) {
    throw ConfigError("gate_weights must sum to 1");
  }
  for (const auto& e : moe.experts) {
    if (e.profile.size() != modality_dim) throw ConfigError("expert profile has wrong length");
    if (e.weight_vector.size() != feature_dim) throw ConfigError("expert weights have wrong length");
    if ((e.profile.array() < 0.0).any()) throw ConfigError("expert profile must be non-negative");
    if (!e.weight_vector.allFinite() || !e.profile.allFinite() || !std::isfinite(e.threshold)) {
      throw ConfigError("expert parameters must be finite");
    }
  }
}

void rl_update(MoEState& moe, Eigen::Index expert_used, double sample_reward) {
  if (expert_used < 0 || expert_used >= moe.gate_weights.size()) {
    throw std::out_of_range("expert index " + std::to_string(expert_used) + " out of range");
  }
  if (!std::isfinite(sample_reward) || sample_reward < -1.0 || sample_reward > 1.0) {
    throw ComputationError("sample reward must lie in [-1, 1]");
  }
  moe.gate_weights[expert_used] *= std::exp(moe.learning_rate * sample_reward);
  moe.gate_weights /= moe.gate_weights.sum();
}

void moe_init(Agent& agent) {
  if (agent.status != AgentStatus::Probationary) {
    throw LifecycleError("moe_init called on agent " + std::to_string(agent.id.value) +
                         " which is not Probationary");
  }
  const auto n = static_cast<Eigen::Index>(agent.moe.experts.size());
  agent.moe.gate_weights = Vector::Constant(n, 1.0 / static_cast<double>(n));
}

}  // namespace rlfa
