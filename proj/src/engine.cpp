#include "rlfa/engine.hpp"

#include <algorithm>

#include "rlfa/moe.hpp"

namespace rlfa {

void validate_engine(const EngineConfig& cfg) {
  validate_stream(cfg.stream);
  validate_lifecycle(cfg.lifecycle);
  validate_reward(cfg.weights, cfg.reward);
  for (const auto& r : cfg.roles) {
    if (r.role.empty()) throw ConfigError("role name must not be empty");
  }
}

AgentId admit_agent(EngineState& state, Agent agent) {
  agent.id = AgentId{state.next_agent_id++};
  agent.set_status(agent.status);
  const AgentId id = agent.id;
  if (agent.status == AgentStatus::Released) {
    state.pool.push_back(std::move(agent));
  } else {
    const auto pos = std::lower_bound(state.roster.begin(), state.roster.end(), id,
                                      [](const Agent& a, AgentId x) { return a.id < x; });
    state.roster.insert(pos, std::move(agent));
  }
  return id;
}

CycleReport run_cycle(const EngineConfig& cfg, EngineState& state) {
  const std::int64_t cycle = state.next_cycle;
  CycleReport report;
  report.cycle = cycle;

  // (1) pipeline
  const auto samples = generate_cycle(cfg.stream, cycle);
  PerformanceLog log;
  GateFeedback feedback;
  const PipelineContext ctx{cfg.stream.seed, cfg.record_detections};
  for (const auto& a : state.roster) {
    if (a.status == AgentStatus::Probationary) report.shadow_agents.push_back(a);
  }
  report.stalled = !select_fraud_agent(state.roster).has_value();
  if (report.stalled) report.vacancy_misses.push_back("stall: no Active " + std::string(kFraudRole) + " agent");

  CycleSummary& summary = report.summary;
  summary.cycle = cycle;
  summary.segment = cfg.stream.schedule.segment_index(cycle);
  summary.promotions_before = state.promotions;
  for (const auto& sample : samples) {
    const SampleOutcome out =
        process_sample(sample, state.roster, log, feedback, ctx, &report.detections);
    if (out.action) report.actions.push_back(*out.action);
    if (out.primary) {
      AgentWindow& sys = summary.system;
      const bool v = out.primary->verdict;
      ++(v ? (sample.label ? sys.true_positives : sys.false_positives)
           : (sample.label ? sys.false_negatives : sys.true_negatives));
      ++sys.samples_seen;
    } else {
      ++summary.undecided;
    }
  }

  // (2) rewards and gate learning
  for (auto& agent : state.roster) {
    const AgentWindow& w = log.window(agent.id);
    MetricsRow row;
    row.cycle = cycle;
    row.agent = agent.id;
    row.status = agent.status;
    row.window = w;
    row.f1 = f1_breakdown(w);
    row.accuracy = accuracy(w);
    row.components = compute_components(agent, log, cfg.reward);
    row.reward = compute_reward(cfg.weights, row.components);
    row.service_time = agent.service_time;
    agent.last_reward = row.reward;
    if (const auto it = feedback.find(agent.id); it != feedback.end()) {
      for (std::size_t e = 0; e < it->second.size(); ++e) {
        if (it->second[e].count > 0) {
          rl_update(agent.moe, static_cast<Eigen::Index>(e), it->second[e].mean());
        }
      }
    }
    report.rows.push_back(row);
  }

  // (3) release
  evaluate_and_release(state.roster, state.pool, log, cfg.lifecycle, cycle, report.events);

  // (4) vacancies, probation, service time
  const auto vacancies = find_vacancies(state.roster, cfg.roles);
  for (auto& miss : fill_vacant_roles(state.roster, state.pool, vacancies, cfg.lifecycle, cycle,
                                      report.events)) {
    report.vacancy_misses.push_back("unfilled: " + miss);
  }
  transition_probationary(state.roster, state.pool, log, cfg.lifecycle, cycle, report.events);
  increment_service_time(state.roster, cycle, report.events);

  // (5) the window is local to the cycle and is dropped here.
  state.promotions += std::count_if(report.events.begin(), report.events.end(),
                                    [](const RosterEvent& e) { return e.kind == EventKind::Promote; });
  state.history.push_back(summary);
  ++state.next_cycle;
  return report;
}

}  // namespace rlfa
