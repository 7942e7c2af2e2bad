#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "rlfa/config.hpp"
#include "rlfa/engine.hpp"

namespace rlfa {

using CycleObserver = std::function<void(const CycleReport&, const EngineState&)>;

/// Runs the remaining cycles of `cfg` and writes events.jsonl, metrics.csv,
/// summary.json (and detections.jsonl / snapshots/ when enabled) into out_dir.
/// With `resume_from`, continues from a snapshot instead of the initial state.
EngineState execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir,
                        const std::optional<std::filesystem::path>& resume_from = std::nullopt,
                        const CycleObserver& observer = {});

std::filesystem::path snapshot_path(const std::filesystem::path& out_dir, std::int64_t cycle);

struct RunOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool emit_detections = false;
  std::optional<std::int64_t> snapshot_interval;
  std::optional<std::filesystem::path> resume;
};

/// Loads the config or preset named by `opts` and applies command-line overrides.
RunConfig resolve_config(const RunOptions& opts);

// CLI verbs. Return the process exit status; diagnostics go to `err`.
int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err);
int validate_command(const RunOptions& opts, std::ostream& out, std::ostream& err);
int report_command(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);
int preset_command(const std::string& name, std::ostream& out, std::ostream& err);

}  // namespace rlfa
