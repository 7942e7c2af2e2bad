#include "rlfa/domain.hpp"

#include <array>
#include <utility>

namespace rlfa {
namespace {

constexpr std::array<std::pair<AgentStatus, std::string_view>, 3> kStatusNames{{
    {AgentStatus::Active, "Active"},
    {AgentStatus::Probationary, "Probationary"},
    {AgentStatus::Released, "Released"},
}};

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kEventNames{{
    {EventKind::Evaluate, "Evaluate"},
    {EventKind::Release, "Release"},
    {EventKind::Sign, "Sign"},
    {EventKind::Promote, "Promote"},
    {EventKind::ServiceTick, "ServiceTick"},
    {EventKind::FreeAgency, "FreeAgency"},
}};

}  // namespace

std::string_view to_string(AgentStatus s) {
  for (const auto& [k, name] : kStatusNames) {
    if (k == s) return name;
  }
  return "?";
}

std::string_view to_string(AccessTier t) {
  switch (t) {
    case AccessTier::Sandbox:
      return "Sandbox";
    case AccessTier::Restricted:
      return "Restricted";
    case AccessTier::Full:
      return "Full";
  }
  return "?";
}

AgentStatus status_from_string(std::string_view s) {
  for (const auto& [k, name] : kStatusNames) {
    if (name == s) return k;
  }
  throw ConfigError("unknown agent status '" + std::string(s) + "'");
}

std::string_view to_string(EventKind k) {
  for (const auto& [kind, name] : kEventNames) {
    if (kind == k) return name;
  }
  return "?";
}

EventKind event_kind_from_string(std::string_view s) {
  for (const auto& [k, name] : kEventNames) {
    if (name == s) return k;
  }
  throw ConfigError("unknown event kind '" + std::string(s) + "'");
}

}  // namespace rlfa
