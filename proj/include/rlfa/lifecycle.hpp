#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rlfa/domain.hpp"
#include "rlfa/metrics.hpp"

namespace rlfa {

struct LifecycleConfig {
  double release_threshold = 0.80;
  // When set, a reward below this value also counts as a below-threshold evaluation.
  std::optional<double> reward_threshold;
  std::int64_t sustain_window = 3;
  std::int64_t max_service_time = 50;
  bool keep_service_time_on_resign = true;
};

void validate_lifecycle(const LifecycleConfig& cfg);

/// Active and Probationary agents, kept in ascending id order.
using Roster = std::vector<Agent>;
/// Released agents in the order they entered the pool.
using FreeAgentPool = std::vector<Agent>;

struct VacantRole {
  std::string role;
  std::set<std::string> required_skills;
};

/// Roles with no Active or Probationary agent.
std::vector<VacantRole> find_vacancies(std::span<const Agent> roster,
                                       std::span<const VacantRole> roles);

/// Evaluates every Active agent (ascending id). Agents below threshold for
/// sustain_window consecutive evaluations are released; agents at or past
/// max_service_time enter free agency.
void evaluate_and_release(Roster& roster, FreeAgentPool& pool, const PerformanceLog& log,
                          const LifecycleConfig& cfg, std::int64_t cycle,
                          std::vector<RosterEvent>& events);

/// Signs the best qualifying pool agent into each vacancy as Probationary.
/// Returns the roles that could not be filled.
std::vector<std::string> fill_vacant_roles(Roster& roster, FreeAgentPool& pool,
                                           std::span<const VacantRole> vacancies,
                                           const LifecycleConfig& cfg, std::int64_t cycle,
                                           std::vector<RosterEvent>& events);

/// Promotes or releases each Probationary agent that has completed a shadow cycle.
/// Agents signed during `cycle` are left for the next pass.
void transition_probationary(Roster& roster, FreeAgentPool& pool, const PerformanceLog& log,
                             const LifecycleConfig& cfg, std::int64_t cycle,
                             std::vector<RosterEvent>& events);

void increment_service_time(Roster& roster, std::int64_t cycle, std::vector<RosterEvent>& events);

/// Which agents are where, and with what status.
struct Partition {
  std::map<AgentId, AgentStatus> roster;
  std::set<AgentId> pool;

  friend bool operator==(const Partition&, const Partition&) = default;
};

Partition partition_of(std::span<const Agent> roster, std::span<const Agent> pool);

/// Applies Release/FreeAgency/Sign/Promote events to a starting partition.
/// Throws LifecycleError if an event is inconsistent with the partition.
Partition replay_events(Partition start, std::span<const RosterEvent> events);

}  // namespace rlfa
