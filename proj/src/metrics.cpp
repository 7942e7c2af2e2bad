#include "rlfa/metrics.hpp"

#include <cstdio>

namespace rlfa {

const AgentWindow& PerformanceLog::window(AgentId id) const {
  static const AgentWindow kEmpty{};
  const auto it = windows_.find(id);
  return it == windows_.end() ? kEmpty : it->second;
}

F1Breakdown f1_breakdown(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  const auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  F1Breakdown out;
  out.precision = ratio(tp, tp + fp);
  out.recall = ratio(tp, tp + fn);
  // Guard before dividing; the degenerate branch scores 0.
  if (out.precision + out.recall != 0.0) {
    out.f1 = 2.0 * (out.precision * out.recall) / (out.precision + out.recall);
  }
  return out;
}

double accuracy(const AgentWindow& w) {
  if (w.samples_seen == 0) return 0.0;
  return static_cast<double>(w.true_positives + w.true_negatives) /
         static_cast<double>(w.samples_seen);
}

void update_fraud_metrics(PerformanceLog& log, const Agent& agent, const DataSample& sample,
                          const Decision& decision) {
  AgentWindow& w = log.window(agent.id);
  if (decision.verdict && sample.label) {
    ++w.true_positives;
  } else if (decision.verdict) {
    ++w.false_positives;
  } else if (sample.label) {
    ++w.false_negatives;
  } else {
    ++w.true_negatives;
  }
  ++w.samples_seen;
  w.cost_accumulated += agent.cost_per_sample;
}

double evaluate_fraud_performance(Agent& agent, const PerformanceLog& log, std::int64_t cycle,
                                  std::vector<RosterEvent>& events) {
  const AgentWindow& w = log.window(agent.id);
  agent.performance = f1_breakdown(w).f1;
  char detail[96];
  std::snprintf(detail, sizeof detail, "tp=%llu fp=%llu fn=%llu",
                static_cast<unsigned long long>(w.true_positives),
                static_cast<unsigned long long>(w.false_positives),
                static_cast<unsigned long long>(w.false_negatives));
  events.push_back({cycle, EventKind::Evaluate, agent.id, detail, agent.performance});
  return agent.performance;
}

}  // namespace rlfa
