#include <string>

#include "doctest.h"
#include "rlfa/config.hpp"

using namespace rlfa;

namespace {

const std::string kMinimal = R"(stream:
  seed: 7
  samples_per_cycle: 20
  total_cycles: 3
  patterns:
    - name: A
      fraud_rate: 0.5
      fraud_offset: [3, 0, 0, 0, 0, 0]
      salience: [0.4, 0.4, 0.2]
  schedule:
    - start_cycle: 0
      mixture:
        - {pattern: A, weight: 1.0}
roster:
  - name: solo
    skills: [numeric]
    experts:
      - profile: [1, 1, 1]
        weights: [1, 0, 0, 0, 0, 0]
        threshold: 1.5
)";

std::string error_of(const std::string& text) {
  try {
    parse_run_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig cfg = parse_run_config(kMinimal);
  CHECK(cfg.engine.stream.seed == 7);
  CHECK(cfg.engine.lifecycle.sustain_window == 3);
  CHECK(cfg.engine.lifecycle.release_threshold == 0.8);
  CHECK_FALSE(cfg.engine.lifecycle.reward_threshold.has_value());
  CHECK(cfg.engine.weights.alpha == 1.0);
  CHECK(cfg.engine.roles.size() == 1);
  REQUIRE(cfg.roster.size() == 1);
  CHECK(cfg.roster[0].status == AgentStatus::Active);
  CHECK(cfg.roster[0].moe.gate_weights[0] == 1.0);
  CHECK(cfg.pool.empty());
}

TEST_CASE("errors carry the line of the offending node") {
  SUBCASE("sustain_window = 0") {
    const std::string msg = error_of(kMinimal + "lifecycle:\n  sustain_window: 0\n");
    CHECK(msg.find("cfg.yaml:22:") != std::string::npos);
    CHECK(msg.find("sustain_window") != std::string::npos);
  }
  SUBCASE("unknown key") {
    const std::string msg = error_of(kMinimal + "lifecycle:\n  sustain: 2\n");
    CHECK(msg.find("cfg.yaml:22:") != std::string::npos);
    CHECK(msg.find("unknown key 'sustain'") != std::string::npos);
  }
  SUBCASE("wrong vector length") {
    std::string text = kMinimal;
    text.replace(text.find("[3, 0, 0, 0, 0, 0]"), 18, "[3, 0, 0]");
    const std::string msg = error_of(text);
    CHECK(msg.find("cfg.yaml:8:") != std::string::npos);
  }
  SUBCASE("mixture weights must sum to one") {
    std::string text = kMinimal;
    text.replace(text.find("weight: 1.0"), 11, "weight: 0.5");
    CHECK(error_of(text).find("sum to 1") != std::string::npos);
  }
  SUBCASE("yaml syntax error") {
    CHECK(error_of("stream: [1, 2\n").find("cfg.yaml:") == 0);
  }
  SUBCASE("pool agents cannot declare a status") {
    const std::string msg = error_of(kMinimal +
                                     "pool:\n  - status: Active\n    experts:\n      - {profile: [1,1,1], "
                                     "weights: [1,0,0,0,0,0], threshold: 1}\n");
    CHECK(msg.find("cfg.yaml:22:") != std::string::npos);
  }
}

TEST_CASE("yaml round trip preserves the config exactly") {
  const RunConfig preset = make_preset("section-4.4");
  const RunConfig again = parse_run_config(to_yaml(preset));
  CHECK(to_yaml(again) == to_yaml(preset));
  CHECK(config_fingerprint(again) == config_fingerprint(preset));
  CHECK(again.pool.size() == preset.pool.size());
  CHECK(again.engine.stream.patterns[1].fraud_offset == preset.engine.stream.patterns[1].fraud_offset);
}

TEST_CASE("fingerprint ignores output options but not the seed") {
  RunConfig a = parse_run_config(kMinimal);
  RunConfig b = a;
  b.output.directory = "elsewhere";
  b.output.emit_detections = true;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.engine.stream.seed = 8;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("presets") {
  CHECK(preset_names() == std::vector<std::string>{"section-4.4"});
  CHECK_THROWS_AS(make_preset("nope"), ConfigError);
  const RunConfig p = make_preset("section-4.4");
  CHECK(p.engine.stream.samples_per_cycle == 1000);
  CHECK(p.engine.stream.schedule.segments.at(1).start_cycle == 10);
  CHECK(p.engine.lifecycle.sustain_window == 3);
  CHECK(p.engine.lifecycle.release_threshold == 0.8);

  const EngineState s = initial_state(p);
  CHECK(s.roster.size() == 1);
  CHECK(s.pool.size() == 3);
  CHECK(s.next_agent_id == 5);
  for (const auto& a : s.pool) CHECK(a.access_tier == AccessTier::Sandbox);
}
