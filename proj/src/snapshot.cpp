#include "rlfa/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rlfa {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "rlfa-snapshot";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

json vec_to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vec_from_json(const json& j) {
  const auto xs = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

json agent_to_json(const Agent& a) {
  json experts = json::array();
  for (const auto& e : a.moe.experts) {
    experts.push_back({{"profile", vec_to_json(e.profile)},
                       {"weights", vec_to_json(e.weight_vector)},
                       {"threshold", e.threshold}});
  }
  return {{"id", a.id.value},
          {"name", a.name},
          {"role", a.role},
          {"skills", a.skills},
          {"status", to_string(a.status)},
          {"service_time", a.service_time},
          {"performance", a.performance},
          {"consecutive_below", a.consecutive_below},
          {"cost_per_sample", a.cost_per_sample},
          {"handoff_reliability", a.handoff_reliability},
          {"last_reward", a.last_reward},
          {"signed_cycle", a.signed_cycle},
          {"misbehaving", a.misbehaving},
          {"moe", {{"experts", experts},
                   {"gate_weights", vec_to_json(a.moe.gate_weights)},
                   {"learning_rate", a.moe.learning_rate}}}};
}

Agent agent_from_json(const json& j) {
  Agent a;
  a.id = AgentId{j.at("id").get<std::uint64_t>()};
  a.name = j.at("name").get<std::string>();
  a.role = j.at("role").get<std::string>();
  a.skills = j.at("skills").get<std::set<std::string>>();
  a.set_status(status_from_string(j.at("status").get<std::string>()));
  a.service_time = j.at("service_time").get<std::int64_t>();
  a.performance = j.at("performance").get<double>();
  a.consecutive_below = j.at("consecutive_below").get<std::int64_t>();
  a.cost_per_sample = j.at("cost_per_sample").get<double>();
  a.handoff_reliability = j.at("handoff_reliability").get<double>();
  a.last_reward = j.at("last_reward").get<double>();
  a.signed_cycle = j.at("signed_cycle").get<std::int64_t>();
  a.misbehaving = j.at("misbehaving").get<bool>();
  const json& m = j.at("moe");
  for (const auto& e : m.at("experts")) {
    a.moe.experts.push_back(
        {vec_from_json(e.at("profile")), vec_from_json(e.at("weights")), e.at("threshold").get<double>()});
  }
  a.moe.gate_weights = vec_from_json(m.at("gate_weights"));
  a.moe.learning_rate = m.at("learning_rate").get<double>();
  return a;
}

json window_to_json(const AgentWindow& w) {
  return {{"tp", w.true_positives}, {"fp", w.false_positives}, {"fn", w.false_negatives},
          {"tn", w.true_negatives}, {"samples_seen", w.samples_seen}};
}

AgentWindow window_from_json(const json& j) {
  AgentWindow w;
  w.true_positives = j.at("tp").get<std::uint64_t>();
  w.false_positives = j.at("fp").get<std::uint64_t>();
  w.false_negatives = j.at("fn").get<std::uint64_t>();
  w.true_negatives = j.at("tn").get<std::uint64_t>();
  w.samples_seen = j.at("samples_seen").get<std::uint64_t>();
  return w;
}

json state_to_json(const EngineState& s) {
  json roster = json::array();
  for (const auto& a : s.roster) roster.push_back(agent_to_json(a));
  json pool = json::array();
  for (const auto& a : s.pool) pool.push_back(agent_to_json(a));
  json history = json::array();
  for (const auto& h : s.history) {
    history.push_back({{"cycle", h.cycle},
                       {"segment", h.segment},
                       {"promotions_before", h.promotions_before},
                       {"system", window_to_json(h.system)},
                       {"undecided", h.undecided}});
  }
  return {{"next_cycle", s.next_cycle}, {"next_agent_id", s.next_agent_id},
          {"promotions", s.promotions}, {"roster", roster},
          {"pool", pool},               {"history", history}};
}

EngineState state_from_json(const json& j) {
  EngineState s;
  s.next_cycle = j.at("next_cycle").get<std::int64_t>();
  s.next_agent_id = j.at("next_agent_id").get<std::uint64_t>();
  s.promotions = j.at("promotions").get<std::int64_t>();
  for (const auto& a : j.at("roster")) s.roster.push_back(agent_from_json(a));
  for (const auto& a : j.at("pool")) s.pool.push_back(agent_from_json(a));
  for (const auto& h : j.at("history")) {
    CycleSummary c;
    c.cycle = h.at("cycle").get<std::int64_t>();
    c.segment = h.at("segment").get<std::size_t>();
    c.promotions_before = h.at("promotions_before").get<std::int64_t>();
    c.system = window_from_json(h.at("system"));
    c.undecided = h.at("undecided").get<std::uint64_t>();
    s.history.push_back(c);
  }
  return s;
}

}  // namespace

std::string snapshot_to_string(const EngineState& state, std::uint64_t config_fingerprint) {
  const std::string payload = state_to_json(state).dump();
  json doc = {{"format", kFormat},
              {"version", kSnapshotVersion},
              {"config_fingerprint", hex64(config_fingerprint)},
              {"checksum", hex64(fnv1a(payload))},
              {"state", json::parse(payload)}};
  return doc.dump() + "\n";
}

EngineState restore_from_string(const std::string& text, std::uint64_t expected_fingerprint) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SnapshotError(std::string("snapshot is truncated or not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != kFormat) throw SnapshotError("not an rlfa snapshot");
    const int version = doc.at("version").get<int>();
    if (version != kSnapshotVersion) {
      throw SnapshotError("snapshot version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kSnapshotVersion) + ")");
    }
    if (doc.at("config_fingerprint").get<std::string>() != hex64(expected_fingerprint)) {
      throw SnapshotError("snapshot was written for a different run config");
    }
    const json& state = doc.at("state");
    if (doc.at("checksum").get<std::string>() != hex64(fnv1a(state.dump()))) {
      throw SnapshotError("snapshot checksum mismatch (file corrupted)");
    }
    return state_from_json(state);
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("snapshot is malformed: ") + e.what());
  } catch (const ConfigError& e) {
    throw SnapshotError(std::string("snapshot is malformed: ") + e.what());
  }
}

void write_snapshot(const std::filesystem::path& path, const EngineState& state,
                    std::uint64_t config_fingerprint) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot write snapshot " + tmp.string());
    out << snapshot_to_string(state, config_fingerprint);
    if (!out) throw SnapshotError("failed writing snapshot " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

EngineState read_snapshot(const std::filesystem::path& path, std::uint64_t expected_fingerprint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return restore_from_string(ss.str(), expected_fingerprint);
}

}  // namespace rlfa
