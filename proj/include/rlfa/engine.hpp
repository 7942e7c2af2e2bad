#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlfa/lifecycle.hpp"
#include "rlfa/metrics.hpp"
#include "rlfa/pipeline.hpp"
#include "rlfa/reward.hpp"
#include "rlfa/simulator.hpp"

namespace rlfa {

struct EngineConfig {
  StreamConfig stream;
  LifecycleConfig lifecycle;
  RewardWeights weights;
  RewardConfig reward;
  std::vector<VacantRole> roles{{std::string(kFraudRole), {}}};
  bool record_detections = false;
};

void validate_engine(const EngineConfig& cfg);

/// Per-cycle system-level aggregate kept across the whole run.
struct CycleSummary {
  std::int64_t cycle = 0;
  std::size_t segment = 0;
  std::int64_t promotions_before = 0;
  AgentWindow system;
  std::uint64_t undecided = 0;
};

struct EngineState {
  std::int64_t next_cycle = 0;
  std::uint64_t next_agent_id = 1;
  Roster roster;
  FreeAgentPool pool;
  std::int64_t promotions = 0;
  std::vector<CycleSummary> history;
};

/// Assigns a fresh id and places the agent on the roster (Active/Probationary) or
/// in the pool (Released).
AgentId admit_agent(EngineState& state, Agent agent);

struct MetricsRow {
  std::int64_t cycle = 0;
  AgentId agent;
  AgentStatus status = AgentStatus::Active;
  AgentWindow window;
  F1Breakdown f1;
  double accuracy = 0.0;
  RewardComponents components;
  double reward = 0.0;
  std::int64_t service_time = 0;
};

struct CycleReport {
  std::int64_t cycle = 0;
  std::vector<RosterEvent> events;
  std::vector<MetricsRow> rows;
  CycleSummary summary;
  std::vector<ActionRecord> actions;
  std::vector<DetectionRecord> detections;
  // Probationary agents as they were while shadowing this cycle.
  std::vector<Agent> shadow_agents;
  std::vector<std::string> vacancy_misses;
  bool stalled = false;
};

/// One lifecycle cycle, in fixed order: pipeline over the cycle's samples, rewards and
/// gate updates, evaluate-and-release, fill vacancies, probation transitions, service tick.
CycleReport run_cycle(const EngineConfig& cfg, EngineState& state);

}  // namespace rlfa
