#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rlfa/engine.hpp"

namespace rlfa {

struct OutputOptions {
  std::string directory = "out";
  bool emit_detections = false;
  // Write a state snapshot after every N-th completed cycle; 0 disables.
  std::int64_t snapshot_interval = 0;
};

/// Everything a run needs. Roster agents carry status Active or Probationary;
/// pool agents are Released. Ids are assigned at start, roster first.
struct RunConfig {
  EngineConfig engine;
  std::vector<Agent> roster;
  std::vector<Agent> pool;
  OutputOptions output;
};

/// Parses and fully validates a YAML run config. Errors are ConfigError with
/// "<source>:<line>:<column>: message".
RunConfig parse_run_config(std::string_view yaml_text, std::string_view source_name = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Cross-field validation of an already-built config.
void validate_run_config(const RunConfig& cfg);

std::string to_yaml(const RunConfig& cfg);

/// FNV-1a over the canonical YAML of the config, ignoring output options.
std::uint64_t config_fingerprint(const RunConfig& cfg);

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
RunConfig make_preset(std::string_view name);

EngineState initial_state(const RunConfig& cfg);

}  // namespace rlfa
