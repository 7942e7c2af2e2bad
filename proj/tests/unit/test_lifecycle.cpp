#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "rlfa/lifecycle.hpp"

using namespace rlfa;
using namespace rlfa::test;

namespace {

// Window that evaluates to the given F1 for precision == recall == f1 = tp/(tp+err).
void set_f1(PerformanceLog& log, AgentId id, std::uint64_t tp, std::uint64_t err) {
  auto& w = log.window(id);
  w.true_positives = tp;
  w.false_positives = err;
  w.false_negatives = err;
}

std::size_t count_kind(const std::vector<RosterEvent>& ev, EventKind k) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [k](const RosterEvent& e) { return e.kind == k; }));
}

}  // namespace

TEST_CASE("evaluate_and_release") {
  LifecycleConfig cfg;
  cfg.release_threshold = 0.80;
  Roster roster{simple_agent(1, AgentStatus::Active)};
  FreeAgentPool pool;
  PerformanceLog log;
  std::vector<RosterEvent> ev;

  SUBCASE("0.79 with W=1 is released") {
    cfg.sustain_window = 1;
    set_f1(log, AgentId{1}, 79, 21);
    evaluate_and_release(roster, pool, log, cfg, 0, ev);
    CHECK(roster.empty());
    REQUIRE(pool.size() == 1);
    CHECK(pool[0].status == AgentStatus::Released);
    CHECK(pool[0].access_tier == AccessTier::Sandbox);
    CHECK(count_kind(ev, EventKind::Release) == 1);
  }
  SUBCASE("service-time expiry is free agency even when performing") {
    roster[0].service_time = cfg.max_service_time;
    set_f1(log, AgentId{1}, 95, 5);
    evaluate_and_release(roster, pool, log, cfg, 0, ev);
    CHECK(roster.empty());
    CHECK(count_kind(ev, EventKind::FreeAgency) == 1);
    CHECK(count_kind(ev, EventKind::Release) == 0);
  }
  SUBCASE("W=3 with one bad prior cycle retains a recovering agent") {
    cfg.sustain_window = 3;
    roster[0].consecutive_below = 1;
    set_f1(log, AgentId{1}, 85, 15);
    evaluate_and_release(roster, pool, log, cfg, 0, ev);
    REQUIRE(roster.size() == 1);
    CHECK(roster[0].consecutive_below == 0);
  }
  SUBCASE("W=3 releases on the third consecutive low evaluation") {
    cfg.sustain_window = 3;
    for (int c = 0; c < 3; ++c) {
      CHECK(roster.size() == 1);
      set_f1(log, AgentId{1}, 50, 50);
      evaluate_and_release(roster, pool, log, cfg, c, ev);
    }
    CHECK(roster.empty());
    CHECK(ev.back().kind == EventKind::Release);
    CHECK(ev.back().cycle == 2);
  }
  SUBCASE("reward threshold also counts as below") {
    cfg.sustain_window = 1;
    cfg.reward_threshold = 0.5;
    roster[0].last_reward = 0.2;
    set_f1(log, AgentId{1}, 95, 5);
    evaluate_and_release(roster, pool, log, cfg, 0, ev);
    CHECK(roster.empty());
  }
  SUBCASE("probationary agents are left to the probation pass") {
    roster.push_back(simple_agent(2, AgentStatus::Probationary));
    set_f1(log, AgentId{1}, 95, 5);
    evaluate_and_release(roster, pool, log, cfg, 0, ev);
    CHECK(roster.size() == 2);
    CHECK(count_kind(ev, EventKind::Evaluate) == 1);
  }
}

TEST_CASE("fill_vacant_roles") {
  LifecycleConfig cfg;
  Roster roster;
  std::vector<RosterEvent> ev;
  const std::vector<VacantRole> vacancies{{std::string(kFraudRole), {"text", "pattern-B"}}};

  SUBCASE("only the superset-skilled candidate qualifies") {
    FreeAgentPool pool{simple_agent(1, AgentStatus::Released, 0.99), simple_agent(2, AgentStatus::Released, 0.9)};
    pool[0].skills = {"text"};
    pool[1].skills = {"text", "pattern-B"};
    const auto misses = fill_vacant_roles(roster, pool, vacancies, cfg, 4, ev);
    CHECK(misses.empty());
    REQUIRE(roster.size() == 1);
    CHECK(roster[0].id == AgentId{2});
    CHECK(roster[0].status == AgentStatus::Probationary);
    CHECK(roster[0].access_tier == AccessTier::Restricted);
    CHECK(roster[0].signed_cycle == 4);
    CHECK(pool.size() == 1);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::Sign);
  }
  SUBCASE("the best of several candidates is chosen") {
    FreeAgentPool pool{simple_agent(3, AgentStatus::Released, 0.7), simple_agent(4, AgentStatus::Released, 0.9),
                       simple_agent(5, AgentStatus::Released, 0.9)};
    for (auto& a : pool) a.skills = {"text", "pattern-B", "x"};
    // Brute force over the candidate set.
    const auto best = std::max_element(pool.begin(), pool.end(), [](const Agent& a, const Agent& b) {
      return a.performance < b.performance || (a.performance == b.performance && a.id > b.id);
    });
    const AgentId expected = best->id;
    fill_vacant_roles(roster, pool, vacancies, cfg, 0, ev);
    CHECK(roster.at(0).id == expected);
    CHECK(expected == AgentId{4});
  }
  SUBCASE("empty pool leaves the vacancy") {
    FreeAgentPool pool;
    const auto misses = fill_vacant_roles(roster, pool, vacancies, cfg, 0, ev);
    CHECK(misses.size() == 1);
    CHECK(ev.empty());
    CHECK(roster.empty());
  }
  SUBCASE("service time is reset only when configured") {
    FreeAgentPool pool{simple_agent(1, AgentStatus::Released, 0.9)};
    pool[0].skills = {"text", "pattern-B"};
    pool[0].service_time = 7;
    cfg.keep_service_time_on_resign = false;
    fill_vacant_roles(roster, pool, vacancies, cfg, 0, ev);
    CHECK(roster[0].service_time == 0);
  }
}

TEST_CASE("find_vacancies") {
  const std::vector<VacantRole> roles{{std::string(kFraudRole), {}}};
  CHECK(find_vacancies(Roster{}, roles).size() == 1);
  CHECK(find_vacancies(Roster{simple_agent(1, AgentStatus::Probationary)}, roles).empty());
  CHECK(find_vacancies(Roster{simple_agent(1, AgentStatus::Active)}, roles).empty());
}

TEST_CASE("transition_probationary") {
  LifecycleConfig cfg;
  Roster roster{simple_agent(1, AgentStatus::Probationary)};
  roster[0].signed_cycle = 2;
  roster[0].moe.gate_weights = vec({1.0});
  FreeAgentPool pool;
  PerformanceLog log;
  std::vector<RosterEvent> ev;

  SUBCASE("0.88 is promoted") {
    set_f1(log, AgentId{1}, 88, 12);
    transition_probationary(roster, pool, log, cfg, 3, ev);
    REQUIRE(roster.size() == 1);
    CHECK(roster[0].status == AgentStatus::Active);
    CHECK(roster[0].access_tier == AccessTier::Full);
    CHECK(ev.back().kind == EventKind::Promote);
  }
  SUBCASE("0.70 goes back to the pool with its shadow score") {
    set_f1(log, AgentId{1}, 70, 30);
    transition_probationary(roster, pool, log, cfg, 3, ev);
    CHECK(roster.empty());
    REQUIRE(pool.size() == 1);
    CHECK(pool[0].performance == doctest::Approx(0.70));
    CHECK(ev.back().kind == EventKind::Release);
  }
  SUBCASE("exactly the threshold is promoted") {
    set_f1(log, AgentId{1}, 80, 20);
    transition_probationary(roster, pool, log, cfg, 3, ev);
    CHECK(roster.at(0).status == AgentStatus::Active);
  }
  SUBCASE("agents signed this cycle wait for a shadow cycle") {
    transition_probationary(roster, pool, log, cfg, 2, ev);
    CHECK(roster.at(0).status == AgentStatus::Probationary);
    CHECK(ev.empty());
  }
}

TEST_CASE("increment_service_time touches the roster only") {
  Roster roster{simple_agent(1, AgentStatus::Active), simple_agent(2, AgentStatus::Probationary)};
  roster[0].service_time = 4;
  FreeAgentPool pool{simple_agent(3, AgentStatus::Released)};
  pool[0].service_time = 7;
  std::vector<RosterEvent> ev;
  increment_service_time(roster, 0, ev);
  CHECK(roster[0].service_time == 5);
  CHECK(roster[1].service_time == 1);
  CHECK(pool[0].service_time == 7);
  CHECK(count_kind(ev, EventKind::ServiceTick) == 2);
}

TEST_CASE("replay_events") {
  Partition start;
  start.roster[AgentId{1}] = AgentStatus::Active;
  start.pool = {AgentId{2}};
  const std::vector<RosterEvent> ev{
      {0, EventKind::Release, AgentId{1}, "", 0.5},
      {0, EventKind::Sign, AgentId{2}, "", 0.9},
      {1, EventKind::Promote, AgentId{2}, "", 0.9},
  };
  const Partition end = replay_events(start, ev);
  CHECK(end.pool == std::set<AgentId>{AgentId{1}});
  CHECK(end.roster.at(AgentId{2}) == AgentStatus::Active);

  const std::vector<RosterEvent> bad{{0, EventKind::Sign, AgentId{1}, "", 0}};
  CHECK_THROWS_AS(replay_events(start, bad), LifecycleError);
}

TEST_CASE("validate_lifecycle") {
  LifecycleConfig cfg;
  CHECK_NOTHROW(validate_lifecycle(cfg));
  cfg.sustain_window = 0;
  CHECK_THROWS_AS(validate_lifecycle(cfg), ConfigError);
  cfg.sustain_window = 1;
  cfg.release_threshold = 1.5;
  CHECK_THROWS_AS(validate_lifecycle(cfg), ConfigError);
}
