#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "rlfa/engine.hpp"

using namespace rlfa;
using namespace rlfa::test;

namespace {

std::size_t count_kind(const std::vector<RosterEvent>& ev, EventKind k) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [k](const RosterEvent& e) { return e.kind == k; }));
}

// Detector on feature 0 with its cut midway between the class means.
Agent detector(double threshold = 1.5) {
  Agent a = simple_agent(0, AgentStatus::Active, 0.0, 0, threshold);
  a.skills = {"numeric"};
  return a;
}

}  // namespace

TEST_CASE("healthy roster: no release or sign") {
  EngineConfig cfg;
  cfg.stream = single_pattern_stream(5, 500, 5);
  EngineState state;
  admit_agent(state, detector());
  Agent spare = detector();
  spare.set_status(AgentStatus::Released);
  admit_agent(state, spare);
  for (int c = 0; c < 5; ++c) {
    const CycleReport r = run_cycle(cfg, state);
    CHECK(count_kind(r.events, EventKind::Release) == 0);
    CHECK(count_kind(r.events, EventKind::Sign) == 0);
    CHECK(r.summary.system.samples_seen == 500);
    CHECK(r.rows.size() == 1);
  }
  CHECK(state.roster.at(0).service_time == 5);
  CHECK(state.pool.at(0).service_time == 0);
}

TEST_CASE("sustained underperformance releases and signs in the same cycle") {
  EngineConfig cfg;
  cfg.stream = single_pattern_stream(5, 500, 8);
  cfg.lifecycle.sustain_window = 3;
  EngineState state;
  admit_agent(state, detector(50.0));  // never flags fraud: F1 = 0
  Agent good = detector();
  good.performance = 0.9;
  good.set_status(AgentStatus::Released);
  admit_agent(state, good);

  std::vector<CycleReport> reports;
  for (int c = 0; c < 5; ++c) reports.push_back(run_cycle(cfg, state));
  CHECK(count_kind(reports[0].events, EventKind::Release) == 0);
  CHECK(count_kind(reports[1].events, EventKind::Release) == 0);
  CHECK(count_kind(reports[2].events, EventKind::Release) == 1);
  CHECK(count_kind(reports[2].events, EventKind::Sign) == 1);
  // Release precedes sign inside the cycle.
  const auto& ev = reports[2].events;
  const auto rel = std::find_if(ev.begin(), ev.end(), [](const RosterEvent& e) { return e.kind == EventKind::Release; });
  const auto sig = std::find_if(ev.begin(), ev.end(), [](const RosterEvent& e) { return e.kind == EventKind::Sign; });
  CHECK(rel < sig);
  // Cycle 3 is the shadow cycle: the pipeline stalls but the shadow still works.
  CHECK(reports[3].stalled);
  CHECK(reports[3].summary.undecided == 500);
  CHECK(count_kind(reports[3].events, EventKind::Promote) == 1);
  CHECK(reports[4].summary.system.samples_seen == 500);
}

TEST_CASE("empty roster and pool complete with a logged vacancy") {
  EngineConfig cfg;
  cfg.stream = single_pattern_stream(5, 50, 2);
  EngineState state;
  const CycleReport r = run_cycle(cfg, state);
  CHECK(r.summary.system.samples_seen == 0);
  CHECK(r.summary.undecided == 50);
  CHECK(r.stalled);
  CHECK(r.vacancy_misses.size() == 2);
  CHECK(r.events.empty());
  CHECK(state.next_cycle == 1);
}

TEST_CASE("event cycles are non-decreasing across a run") {
  EngineConfig cfg;
  cfg.stream = single_pattern_stream(9, 200, 10);
  cfg.lifecycle.sustain_window = 1;
  EngineState state;
  admit_agent(state, detector(2.5));
  Agent b = detector(1.5);
  b.set_status(AgentStatus::Released);
  admit_agent(state, b);
  std::int64_t last = -1;
  for (int c = 0; c < 10; ++c) {
    for (const auto& e : run_cycle(cfg, state).events) {
      REQUIRE(e.cycle >= last);
      REQUIRE(e.cycle == c);
      last = e.cycle;
    }
  }
}

TEST_CASE("gate weights learn from cycle feedback") {
  EngineConfig cfg;
  cfg.stream = single_pattern_stream(5, 500, 3);
  EngineState state;
  Agent a = detector();
  // Expert 0 (used) is good; expert 1 is never routed to.
  a.moe = make_moe({Expert{vec({1, 0, 0}), a.moe.experts[0].weight_vector, 1.5},
                    Expert{vec({0, 0, 1}), Vector::Zero(kFeatureDim), 0.5}});
  admit_agent(state, a);
  run_cycle(cfg, state);
  CHECK(state.roster[0].moe.gate_weights[0] > 0.5);
  CHECK(std::abs(state.roster[0].moe.gate_weights.sum() - 1.0) < 1e-12);
}
