#include "rlfa/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "rlfa/moe.hpp"
#include "rlfa/random.hpp"

namespace rlfa {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::None:
      return "None";
    case Action::Block:
      return "Block";
    case Action::Alert:
      return "Alert";
  }
  return "?";
}

std::vector<AgentId> rank_fraud_agents(std::span<const Agent> roster) {
  std::vector<const Agent*> active;
  for (const auto& a : roster) {
    if (a.status == AgentStatus::Active && a.role == kFraudRole) active.push_back(&a);
  }
  std::sort(active.begin(), active.end(), [](const Agent* x, const Agent* y) {
    if (x->performance != y->performance) return x->performance > y->performance;
    return x->id < y->id;
  });
  std::vector<AgentId> ids;
  ids.reserve(active.size());
  for (const Agent* a : active) ids.push_back(a->id);
  return ids;
}

std::optional<AgentId> select_fraud_agent(std::span<const Agent> roster) {
  const auto ranked = rank_fraud_agents(roster);
  if (ranked.empty()) return std::nullopt;
  return ranked.front();
}

SampleView redact(const DataSample& sample, AccessTier tier) {
  SampleView view{sample.seq, sample.features, sample.modality};
  if (tier == AccessTier::Full) return view;
  const Eigen::Index n = view.features.size();
  if (n > kSensitiveBegin) view.features.tail(n - kSensitiveBegin).setZero();
  if (tier == AccessTier::Sandbox) {
    // std::round is half-away-from-zero.
    for (Eigen::Index i = 0; i < std::min(n, kSensitiveBegin); ++i) {
      view.features[i] = std::round(view.features[i] * 10.0) / 10.0;
    }
  }
  return view;
}

bool handoff_succeeds(std::uint64_t seed, std::uint64_t seq, const Agent& agent) {
  if (agent.handoff_reliability >= 1.0) return true;
  random::CounterStream rng(seed, random::Domain::Handoff, seq, agent.id.value);
  return rng.unit() < agent.handoff_reliability;
}

namespace {

const Agent* find_agent(std::span<const Agent> roster, AgentId id) {
  for (const auto& a : roster) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

// Returns nullopt when the handoff fails.
std::optional<Decision> dispatch(const DataSample& sample, const Agent& agent, bool shadow,
                                 PerformanceLog& log, GateFeedback& feedback,
                                 const PipelineContext& ctx) {
  AgentWindow& w = log.window(agent.id);
  ++w.handoffs_attempted;
  if (!handoff_succeeds(ctx.seed, sample.seq, agent)) return std::nullopt;
  ++w.handoffs_succeeded;

  const AccessTier tier = shadow ? AccessTier::Restricted : agent.access_tier;
  if (agent.misbehaving && tier != AccessTier::Full) {
    // Raw read attempt is denied and audited; the agent still only sees redacted data.
    ++w.violations;
  }
  const SampleView view = redact(sample, tier);
  const Decision d = decide(agent.moe, view.features, view.modality, shadow);
  update_fraud_metrics(log, agent, sample, d);

  auto& signals = feedback[agent.id];
  signals.resize(agent.moe.experts.size());
  auto& s = signals[static_cast<std::size_t>(d.expert_used)];
  s.sum += (d.verdict == sample.label) ? 1.0 : -1.0;
  ++s.count;
  return d;
}

}  // namespace

SampleOutcome process_sample(const DataSample& sample, std::span<const Agent> roster,
                             PerformanceLog& log, GateFeedback& feedback,
                             const PipelineContext& ctx, std::vector<DetectionRecord>* detections) {
  SampleOutcome out;
  for (const AgentId id : rank_fraud_agents(roster)) {
    const Agent& agent = *find_agent(roster, id);
    if (auto d = dispatch(sample, agent, false, log, feedback, ctx)) {
      out.primary = d;
      out.primary_agent = id;
      break;
    }
  }

  if (out.primary) {
    const Action action = out.primary->verdict ? Action::Block : Action::None;
    out.action = ActionRecord{sample.seq, action, out.primary_agent};
    if (detections && ctx.record_detections) {
      detections->push_back({sample.seq, out.primary_agent, out.primary->verdict,
                             out.primary->score, out.primary->expert_used, false, action});
    }
  }

  for (const auto& agent : roster) {
    if (agent.status != AgentStatus::Probationary || agent.role != kFraudRole) continue;
    if (auto d = dispatch(sample, agent, true, log, feedback, ctx)) {
      out.shadows.emplace_back(agent.id, *d);
      if (detections && ctx.record_detections) {
        detections->push_back({sample.seq, agent.id, d->verdict, d->score, d->expert_used, true,
                               Action::None});
      }
    }
  }
  return out;
}

}  // namespace rlfa
