#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rlfa/domain.hpp"
#include "rlfa/metrics.hpp"

namespace rlfa {

enum class Action { None, Block, Alert };
std::string_view to_string(Action a);

struct ActionRecord {
  std::uint64_t seq = 0;
  Action action = Action::None;
  AgentId acting_agent;
};

/// What an agent is allowed to see of a sample. Label and pattern are not representable.
struct SampleView {
  std::uint64_t seq = 0;
  Vector features;
  Vector modality;
};

struct DetectionRecord {
  std::uint64_t seq = 0;
  AgentId agent;
  bool verdict = false;
  double score = 0.0;
  Eigen::Index expert = 0;
  bool shadow = false;
  Action action = Action::None;
};

/// Running sum of +1 (correct) / -1 (incorrect) signals per agent and expert.
struct ExpertSignal {
  double sum = 0.0;
  std::uint64_t count = 0;
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};
using GateFeedback = std::map<AgentId, std::vector<ExpertSignal>>;

struct PipelineContext {
  std::uint64_t seed = 0;
  bool record_detections = false;
};

struct SampleOutcome {
  std::optional<Decision> primary;
  AgentId primary_agent;
  std::vector<std::pair<AgentId, Decision>> shadows;
  std::optional<ActionRecord> action;
};

/// Active fraud agents ordered by performance (desc), then id (asc).
std::vector<AgentId> rank_fraud_agents(std::span<const Agent> roster);

/// Best Active fraud agent, or nullopt when the pipeline must stall.
std::optional<AgentId> select_fraud_agent(std::span<const Agent> roster);

/// Full: identity. Restricted: sensitive suffix zeroed. Sandbox: suffix zeroed and the
/// remaining features rounded half away from zero to one decimal.
SampleView redact(const DataSample& sample, AccessTier tier);

/// Whether a dispatch of `seq` to `agent` completes. Pure function of the run seed.
bool handoff_succeeds(std::uint64_t seed, std::uint64_t seq, const Agent& agent);

/// Dispatches one sample to the best Active agent (falling back down the ranking on handoff
/// failure), runs every Probationary agent in shadow mode on Restricted data, records the
/// action and all metrics.
SampleOutcome process_sample(const DataSample& sample, std::span<const Agent> roster,
                             PerformanceLog& log, GateFeedback& feedback,
                             const PipelineContext& ctx,
                             std::vector<DetectionRecord>* detections = nullptr);

}  // namespace rlfa
