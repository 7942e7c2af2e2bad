#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rlfa {

using Vector = Eigen::VectorXd;

/// Number of entries in a sample's feature vector.
inline constexpr Eigen::Index kFeatureDim = 6;
/// Entries [kSensitiveBegin, kFeatureDim) are only visible at Full tier.
inline constexpr Eigen::Index kSensitiveBegin = 3;
/// Modalities: text, numeric, behavior.
inline constexpr Eigen::Index kModalityDim = 3;

inline constexpr std::string_view kFraudRole = "FraudDetection";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LifecycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ComputationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Monotonically assigned, never reused.
struct AgentId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

enum class AgentStatus { Active, Probationary, Released };

enum class AccessTier { Sandbox = 0, Restricted = 1, Full = 2 };

constexpr AccessTier tier_for(AgentStatus s) {
  switch (s) {
    case AgentStatus::Active:
      return AccessTier::Full;
    case AgentStatus::Probationary:
      return AccessTier::Restricted;
    case AgentStatus::Released:
      break;
  }
  return AccessTier::Sandbox;
}

std::string_view to_string(AgentStatus s);
std::string_view to_string(AccessTier t);
AgentStatus status_from_string(std::string_view s);

struct Expert {
  Vector profile;        // modality affinity, non-negative
  Vector weight_vector;  // linear scorer over features
  double threshold = 0.0;
};

struct MoEState {
  std::vector<Expert> experts;
  Vector gate_weights;  // sums to 1
  double learning_rate = 0.05;
};

struct Agent {
  AgentId id;
  std::string name;
  std::string role{kFraudRole};
  std::set<std::string> skills;
  AgentStatus status = AgentStatus::Active;
  AccessTier access_tier = AccessTier::Full;
  std::int64_t service_time = 0;
  double performance = 0.0;
  std::int64_t consecutive_below = 0;
  MoEState moe;
  double cost_per_sample = 1.0;
  double handoff_reliability = 1.0;

  // Reward from the most recent cycle this agent processed samples in.
  double last_reward = 0.0;
  // Cycle in which the agent was last signed from the pool; -1 if never.
  std::int64_t signed_cycle = -1;
  // Audit hook: attempts to read raw samples below Full tier.
  bool misbehaving = false;

  void set_status(AgentStatus s) {
    status = s;
    access_tier = tier_for(s);
  }
};

struct DataSample {
  std::uint64_t seq = 0;
  Vector features;
  Vector modality;
  bool label = false;
  std::string pattern;
};

struct Decision {
  bool verdict = false;
  double score = 0.0;
  Eigen::Index expert_used = 0;
  bool shadow = false;
};

enum class EventKind { Evaluate, Release, Sign, Promote, ServiceTick, FreeAgency };

std::string_view to_string(EventKind k);
EventKind event_kind_from_string(std::string_view s);

struct RosterEvent {
  std::int64_t cycle = 0;
  EventKind kind = EventKind::Evaluate;
  AgentId agent;
  std::string detail;
  double performance_snapshot = 0.0;

  friend bool operator==(const RosterEvent&, const RosterEvent&) = default;
};

}  // namespace rlfa
