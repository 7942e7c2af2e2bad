#include "rlfa/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rlfa/moe.hpp"

namespace rlfa {

namespace {

std::string fmt_perf(const char* what, double perf, double threshold) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s f1=%.6f threshold=%.6f", what, perf, threshold);
  return buf;
}

void insert_sorted(Roster& roster, Agent agent) {
  const auto pos = std::lower_bound(roster.begin(), roster.end(), agent.id,
                                    [](const Agent& a, AgentId id) { return a.id < id; });
  roster.insert(pos, std::move(agent));
}

void move_to_pool(Agent agent, FreeAgentPool& pool) {
  agent.set_status(AgentStatus::Released);
  agent.consecutive_below = 0;
  pool.push_back(std::move(agent));
}

}  // namespace

void validate_lifecycle(const LifecycleConfig& cfg) {
  if (!std::isfinite(cfg.release_threshold) || cfg.release_threshold < 0.0 ||
      cfg.release_threshold > 1.0) {
    throw ConfigError("release_threshold must lie in [0, 1]");
  }
  if (cfg.reward_threshold && !std::isfinite(*cfg.reward_threshold)) {
    throw ConfigError("reward_threshold must be finite");
  }
  if (cfg.sustain_window < 1) throw ConfigError("sustain_window must be >= 1");
  if (cfg.max_service_time < 1) throw ConfigError("max_service_time must be >= 1");
}

std::vector<VacantRole> find_vacancies(std::span<const Agent> roster,
                                       std::span<const VacantRole> roles) {
  std::vector<VacantRole> out;
  for (const auto& role : roles) {
    const bool filled = std::any_of(roster.begin(), roster.end(), [&](const Agent& a) {
      return a.role == role.role && a.status != AgentStatus::Released;
    });
    if (!filled) out.push_back(role);
  }
  return out;
}

void evaluate_and_release(Roster& roster, FreeAgentPool& pool, const PerformanceLog& log,
                          const LifecycleConfig& cfg, std::int64_t cycle,
                          std::vector<RosterEvent>& events) {
  Roster kept;
  kept.reserve(roster.size());
  for (auto& agent : roster) {
    if (agent.status != AgentStatus::Active) {
      kept.push_back(std::move(agent));
      continue;
    }
    const double perf = evaluate_fraud_performance(agent, log, cycle, events);
    const bool below = perf < cfg.release_threshold ||
                       (cfg.reward_threshold && agent.last_reward < *cfg.reward_threshold);
    agent.consecutive_below = below ? agent.consecutive_below + 1 : 0;

    if (agent.consecutive_below >= cfg.sustain_window) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " below_for=%lld",
                    static_cast<long long>(agent.consecutive_below));
      events.push_back({cycle, EventKind::Release, agent.id,
                        fmt_perf("underperforming", perf, cfg.release_threshold) + buf, perf});
      move_to_pool(std::move(agent), pool);
    } else if (agent.service_time >= cfg.max_service_time) {
      events.push_back({cycle, EventKind::FreeAgency, agent.id,
                        "service_time=" + std::to_string(agent.service_time) +
                            " max=" + std::to_string(cfg.max_service_time),
                        perf});
      move_to_pool(std::move(agent), pool);
    } else {
      kept.push_back(std::move(agent));
    }
  }
  roster = std::move(kept);
}

std::vector<std::string> fill_vacant_roles(Roster& roster, FreeAgentPool& pool,
                                           std::span<const VacantRole> vacancies,
                                           const LifecycleConfig& cfg, std::int64_t cycle,
                                           std::vector<RosterEvent>& events) {
  std::vector<std::string> misses;
  for (const auto& vacancy : vacancies) {
    auto best = pool.end();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      if (!std::includes(it->skills.begin(), it->skills.end(), vacancy.required_skills.begin(),
                         vacancy.required_skills.end())) {
        continue;
      }
      if (best == pool.end() || it->performance > best->performance ||
          (it->performance == best->performance && it->id < best->id)) {
        best = it;
      }
    }
    if (best == pool.end()) {
      misses.push_back(vacancy.role);
      continue;
    }
    Agent agent = std::move(*best);
    pool.erase(best);
    agent.role = vacancy.role;
    agent.set_status(AgentStatus::Probationary);
    agent.consecutive_below = 0;
    agent.signed_cycle = cycle;
    if (!cfg.keep_service_time_on_resign) agent.service_time = 0;
    events.push_back({cycle, EventKind::Sign, agent.id, "role=" + vacancy.role, agent.performance});
    insert_sorted(roster, std::move(agent));
  }
  return misses;
}

void transition_probationary(Roster& roster, FreeAgentPool& pool, const PerformanceLog& log,
                             const LifecycleConfig& cfg, std::int64_t cycle,
                             std::vector<RosterEvent>& events) {
  Roster kept;
  kept.reserve(roster.size());
  for (auto& agent : roster) {
    if (agent.status != AgentStatus::Probationary || agent.signed_cycle >= cycle) {
      kept.push_back(std::move(agent));
      continue;
    }
    moe_init(agent);
    const double perf = evaluate_fraud_performance(agent, log, cycle, events);
    if (perf >= cfg.release_threshold && agent.service_time < cfg.max_service_time) {
      agent.set_status(AgentStatus::Active);
      events.push_back(
          {cycle, EventKind::Promote, agent.id, fmt_perf("probation passed", perf, cfg.release_threshold), perf});
      kept.push_back(std::move(agent));
    } else if (perf >= cfg.release_threshold) {
      events.push_back({cycle, EventKind::FreeAgency, agent.id,
                        "service_time=" + std::to_string(agent.service_time) +
                            " max=" + std::to_string(cfg.max_service_time),
                        perf});
      move_to_pool(std::move(agent), pool);
    } else {
      events.push_back(
          {cycle, EventKind::Release, agent.id, fmt_perf("probation failed", perf, cfg.release_threshold), perf});
      move_to_pool(std::move(agent), pool);
    }
  }
  roster = std::move(kept);
}

void increment_service_time(Roster& roster, std::int64_t cycle, std::vector<RosterEvent>& events) {
  for (auto& agent : roster) {
    ++agent.service_time;
    events.push_back({cycle, EventKind::ServiceTick, agent.id,
                      "service_time=" + std::to_string(agent.service_time), agent.performance});
  }
}

Partition partition_of(std::span<const Agent> roster, std::span<const Agent> pool) {
  Partition p;
  for (const auto& a : roster) p.roster.emplace(a.id, a.status);
  for (const auto& a : pool) p.pool.insert(a.id);
  return p;
}

Partition replay_events(Partition state, std::span<const RosterEvent> events) {
  const auto fail = [](const RosterEvent& e, const char* why) {
    throw LifecycleError("replay: event " + std::string(to_string(e.kind)) + " for agent " +
                         std::to_string(e.agent.value) + " at cycle " + std::to_string(e.cycle) +
                         ": " + why);
  };
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::Release:
      case EventKind::FreeAgency:
        if (state.roster.erase(e.agent) == 0) fail(e, "agent not on roster");
        state.pool.insert(e.agent);
        break;
      case EventKind::Sign:
        if (state.pool.erase(e.agent) == 0) fail(e, "agent not in pool");
        state.roster.emplace(e.agent, AgentStatus::Probationary);
        break;
      case EventKind::Promote: {
        auto it = state.roster.find(e.agent);
        if (it == state.roster.end() || it->second != AgentStatus::Probationary) {
          fail(e, "agent not on probation");
        }
        it->second = AgentStatus::Active;
        break;
      }
      case EventKind::Evaluate:
      case EventKind::ServiceTick:
        break;
    }
  }
  return state;
}

}  // namespace rlfa
