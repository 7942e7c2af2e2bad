#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "rlfa/config.hpp"
#include "rlfa/engine.hpp"

namespace rlfa {

inline constexpr std::string_view kMetricsHeader =
    "cycle,agent,status,TP,FP,FN,TN,precision,recall,f1,accuracy,synergy,efficiency,penalty,"
    "reward,service_time";
inline constexpr std::string_view kEventFields[] = {"cycle", "kind", "agent", "detail",
                                                    "performance_snapshot"};
inline constexpr std::string_view kDetectionFields[] = {"seq", "agent", "verdict",
                                                        "score", "shadow", "action"};

/// Fixed 6-decimal formatting.
std::string metrics_csv_row(const MetricsRow& row);
/// The per-cycle "system" row: dispatched (non-shadow) decisions only.
std::string system_csv_row(const CycleSummary& summary);
std::string event_json_line(const RosterEvent& e);
std::string detection_json_line(const DetectionRecord& d);

struct PhaseAggregate {
  std::string name;
  std::size_t segment = 0;
  std::int64_t promotions_before = 0;
  std::int64_t first_cycle = 0;
  std::int64_t last_cycle = 0;
  AgentWindow system;
  std::uint64_t undecided = 0;
};

/// Contiguous cycle ranges sharing a drift segment and a promotion count.
std::vector<PhaseAggregate> phase_aggregates(const std::vector<CycleSummary>& history);

std::string summary_json(const EngineState& state);

/// Append-only writers for one output directory.
class RunWriter {
 public:
  RunWriter(const std::filesystem::path& dir, bool emit_detections);

  void write_cycle(const CycleReport& report);
  void flush();

 private:
  std::ofstream events_;
  std::ofstream metrics_;
  std::ofstream detections_;
  bool emit_detections_;
};

}  // namespace rlfa
