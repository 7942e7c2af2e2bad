#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "rlfa/engine.hpp"

namespace rlfa {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSnapshotVersion = 1;

/// Serializes engine state between cycles. The document carries a format tag, a
/// version, the config fingerprint and an FNV-1a checksum of the state payload.
std::string snapshot_to_string(const EngineState& state, std::uint64_t config_fingerprint);

/// Refuses (SnapshotError) on parse failure, truncation, checksum or version
/// mismatch, or a fingerprint different from `expected_fingerprint`.
EngineState restore_from_string(const std::string& text, std::uint64_t expected_fingerprint);

void write_snapshot(const std::filesystem::path& path, const EngineState& state,
                    std::uint64_t config_fingerprint);
EngineState read_snapshot(const std::filesystem::path& path, std::uint64_t expected_fingerprint);

}  // namespace rlfa
