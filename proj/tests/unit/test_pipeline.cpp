#include "doctest.h"
#include "fixtures.hpp"
#include "rlfa/pipeline.hpp"

using namespace rlfa;
using namespace rlfa::test;

TEST_CASE("select_fraud_agent") {
  SUBCASE("argmax on performance") {
    const std::vector<Agent> r{simple_agent(1, AgentStatus::Active, 0.9),
                               simple_agent(2, AgentStatus::Active, 0.7)};
    CHECK(select_fraud_agent(r) == AgentId{1});
  }
  SUBCASE("tie goes to the lowest id") {
    const std::vector<Agent> r{simple_agent(5, AgentStatus::Active, 0.8),
                               simple_agent(2, AgentStatus::Active, 0.8)};
    CHECK(select_fraud_agent(r) == AgentId{2});
  }
  SUBCASE("probationary agents never get the primary dispatch") {
    const std::vector<Agent> r{simple_agent(1, AgentStatus::Probationary, 0.99)};
    CHECK_FALSE(select_fraud_agent(r).has_value());
  }
  SUBCASE("other roles are ignored") {
    std::vector<Agent> r{simple_agent(1, AgentStatus::Active, 0.9)};
    r[0].role = "Triage";
    CHECK_FALSE(select_fraud_agent(r).has_value());
  }
}

TEST_CASE("redact by tier") {
  const DataSample s = make_sample(1, vec({0.9, 0.1, 0.2, 0.7, 0.3, 0.5}), true);
  CHECK(redact(s, AccessTier::Full).features == s.features);
  CHECK(redact(s, AccessTier::Restricted).features == vec({0.9, 0.1, 0.2, 0, 0, 0}));

  const DataSample q = make_sample(2, vec({0.87, -0.25, 0.05, 1.0, 1.0, 1.0}), false);
  const Vector sandbox = redact(q, AccessTier::Sandbox).features;
  CHECK(sandbox[0] == doctest::Approx(0.9));
  CHECK(sandbox[1] == doctest::Approx(-0.3));  // half away from zero
  CHECK(sandbox[2] == doctest::Approx(0.1));
  CHECK(sandbox.tail(3).isZero());
  CHECK(redact(q, AccessTier::Sandbox).modality == q.modality);
}

TEST_CASE("process_sample: primary acts, shadows never do") {
  std::vector<Agent> roster{simple_agent(1, AgentStatus::Active, 0.9),
                            simple_agent(2, AgentStatus::Probationary, 0.0)};
  PerformanceLog log;
  GateFeedback fb;
  std::vector<DetectionRecord> det;
  const PipelineContext ctx{1, true};

  SUBCASE("fraud sample, assigned agent correct") {
    const auto out = process_sample(make_sample(0, vec({0.9, 0, 0, 0, 0, 0}), true), roster, log, fb, ctx, &det);
    REQUIRE(out.primary);
    CHECK(out.primary_agent == AgentId{1});
    CHECK(out.primary->verdict);
    CHECK_FALSE(out.primary->shadow);
    REQUIRE(out.action);
    CHECK(out.action->action == Action::Block);
    CHECK(out.action->acting_agent == AgentId{1});
    CHECK(log.window(AgentId{1}).true_positives == 1);
    REQUIRE(out.shadows.size() == 1);
    CHECK(out.shadows[0].second.shadow);
    CHECK(det.size() == 2);
  }
  SUBCASE("legit sample, shadow says fraud") {
    roster[1].moe.experts[0].threshold = -10.0;  // shadow always flags
    const auto out = process_sample(make_sample(0, vec({0.1, 0, 0, 0, 0, 0}), false), roster, log, fb, ctx, &det);
    REQUIRE(out.action);
    CHECK(out.action->action == Action::None);
    CHECK(log.window(AgentId{2}).false_positives == 1);
    CHECK(log.window(AgentId{1}).true_negatives == 1);
  }
  SUBCASE("gate feedback is +1 for correct and -1 for wrong") {
    process_sample(make_sample(0, vec({0.9, 0, 0, 0, 0, 0}), true), roster, log, fb, ctx);
    process_sample(make_sample(1, vec({0.9, 0, 0, 0, 0, 0}), false), roster, log, fb, ctx);
    CHECK(fb[AgentId{1}][0].count == 2);
    CHECK(fb[AgentId{1}][0].sum == 0.0);
  }
}

TEST_CASE("shadow agents decide on restricted data even when the primary is Full") {
  Agent active = simple_agent(1, AgentStatus::Active, 0.9, 3, 0.5);
  Agent shadow = simple_agent(2, AgentStatus::Probationary, 0.0, 3, 0.5);
  const std::vector<Agent> roster{active, shadow};
  PerformanceLog log;
  GateFeedback fb;
  const auto out = process_sample(make_sample(0, vec({0, 0, 0, 0.9, 0, 0}), true), roster, log, fb, {1, false});
  CHECK(out.primary->verdict);               // sees the sensitive entry
  CHECK_FALSE(out.shadows[0].second.verdict);  // entry zeroed
}

TEST_CASE("handoff failures skip the agent and fall back down the ranking") {
  std::vector<Agent> roster{simple_agent(1, AgentStatus::Active, 0.9), simple_agent(2, AgentStatus::Active, 0.5)};
  roster[0].handoff_reliability = 0.0;
  PerformanceLog log;
  GateFeedback fb;
  const auto out = process_sample(make_sample(7, vec({0.9, 0, 0, 0, 0, 0}), true), roster, log, fb, {3, false});
  REQUIRE(out.primary);
  CHECK(out.primary_agent == AgentId{2});
  const auto& failed = log.window(AgentId{1});
  CHECK(failed.handoffs_attempted == 1);
  CHECK(failed.handoffs_succeeded == 0);
  CHECK(failed.decided() == 0);
  CHECK(log.window(AgentId{2}).handoffs_succeeded == 1);

  roster[1].handoff_reliability = 0.0;
  PerformanceLog log2;
  const auto none = process_sample(make_sample(8, vec({0.9, 0, 0, 0, 0, 0}), true), roster, log2, fb, {3, false});
  CHECK_FALSE(none.primary);
  CHECK_FALSE(none.action);
}

TEST_CASE("handoff sampling is seeded and matches the reliability") {
  Agent a = simple_agent(4, AgentStatus::Active);
  a.handoff_reliability = 0.8;
  int ok = 0;
  for (std::uint64_t seq = 0; seq < 10000; ++seq) {
    const bool first = handoff_succeeds(99, seq, a);
    REQUIRE(first == handoff_succeeds(99, seq, a));
    ok += first;
  }
  // Binomial(10000, 0.8): mean 8000, sd 40.
  CHECK(ok > 7840);
  CHECK(ok < 8160);
}

TEST_CASE("misbehaving agents below Full tier are counted as violations") {
  Agent rogue = simple_agent(2, AgentStatus::Probationary);
  rogue.misbehaving = true;
  Agent full = simple_agent(1, AgentStatus::Active, 0.9);
  full.misbehaving = true;
  const std::vector<Agent> roster{full, rogue};
  PerformanceLog log;
  GateFeedback fb;
  process_sample(make_sample(0, vec({0, 0, 0, 0, 0, 0}), false), roster, log, fb, {1, false});
  CHECK(log.window(AgentId{2}).violations == 1);
  CHECK(log.window(AgentId{1}).violations == 0);
}
