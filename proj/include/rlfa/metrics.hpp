#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rlfa/domain.hpp"

namespace rlfa {

/// One agent's tallies for the current (tumbling) evaluation window.
struct AgentWindow {
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  std::uint64_t true_negatives = 0;
  std::uint64_t samples_seen = 0;
  std::uint64_t handoffs_attempted = 0;
  std::uint64_t handoffs_succeeded = 0;
  double cost_accumulated = 0.0;
  std::uint64_t violations = 0;

  std::uint64_t decided() const {
    return true_positives + false_positives + false_negatives + true_negatives;
  }
};

class PerformanceLog {
 public:
  AgentWindow& window(AgentId id) { return windows_[id]; }
  /// All-zero window for agents that have not been touched this window.
  const AgentWindow& window(AgentId id) const;
  bool contains(AgentId id) const { return windows_.contains(id); }
  const std::map<AgentId, AgentWindow>& windows() const { return windows_; }
  void reset() { windows_.clear(); }

 private:
  std::map<AgentId, AgentWindow> windows_;
};

struct F1Breakdown {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision, recall and F1 with every 0/0 ratio defined as 0.
F1Breakdown f1_breakdown(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);
inline F1Breakdown f1_breakdown(const AgentWindow& w) {
  return f1_breakdown(w.true_positives, w.false_positives, w.false_negatives);
}

/// (TP + TN) / samples_seen, 0 for an empty window.
double accuracy(const AgentWindow& w);

/// Tallies one decision against the ground-truth label.
void update_fraud_metrics(PerformanceLog& log, const Agent& agent, const DataSample& sample,
                          const Decision& decision);

/// Sets agent.performance to the window's F1 and appends an Evaluate event.
double evaluate_fraud_performance(Agent& agent, const PerformanceLog& log, std::int64_t cycle,
                                  std::vector<RosterEvent>& events);

}  // namespace rlfa
