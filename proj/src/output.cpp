#include "rlfa/output.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace rlfa {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

ordered_json window_json(const AgentWindow& w) {
  const F1Breakdown f = f1_breakdown(w);
  return {{"TP", w.true_positives}, {"FP", w.false_positives}, {"FN", w.false_negatives},
          {"TN", w.true_negatives}, {"precision", f.precision},   {"recall", f.recall},
          {"f1", f.f1},             {"accuracy", accuracy(w)}};
}

ordered_json agent_summary(const Agent& a) {
  return {{"id", a.id.value},
          {"name", a.name},
          {"role", a.role},
          {"skills", a.skills},
          {"status", to_string(a.status)},
          {"access_tier", to_string(a.access_tier)},
          {"service_time", a.service_time},
          {"performance", a.performance},
          {"gate_weights", std::vector<double>(a.moe.gate_weights.data(),
                                               a.moe.gate_weights.data() + a.moe.gate_weights.size())}};
}

}  // namespace

std::string metrics_csv_row(const MetricsRow& r) {
  const AgentWindow& w = r.window;
  std::string out = std::to_string(r.cycle) + ',' + std::to_string(r.agent.value) + ',' +
                    std::string(to_string(r.status)) + ',' + std::to_string(w.true_positives) + ',' +
                    std::to_string(w.false_positives) + ',' + std::to_string(w.false_negatives) + ',' +
                    std::to_string(w.true_negatives);
  for (double v : {r.f1.precision, r.f1.recall, r.f1.f1, r.accuracy, r.components.synergy,
                   r.components.efficiency, r.components.penalty, r.reward}) {
    out += ',' + fixed6(v);
  }
  out += ',' + std::to_string(r.service_time);
  return out;
}

std::string system_csv_row(const CycleSummary& s) {
  const AgentWindow& w = s.system;
  const F1Breakdown f = f1_breakdown(w);
  return std::to_string(s.cycle) + ",system,-," + std::to_string(w.true_positives) + ',' +
         std::to_string(w.false_positives) + ',' + std::to_string(w.false_negatives) + ',' +
         std::to_string(w.true_negatives) + ',' + fixed6(f.precision) + ',' + fixed6(f.recall) + ',' +
         fixed6(f.f1) + ',' + fixed6(accuracy(w)) + ",,,,,";
}

std::string event_json_line(const RosterEvent& e) {
  ordered_json j;
  j["cycle"] = e.cycle;
  j["kind"] = to_string(e.kind);
  j["agent"] = e.agent.value;
  j["detail"] = e.detail;
  j["performance_snapshot"] = e.performance_snapshot;
  return j.dump();
}

std::string detection_json_line(const DetectionRecord& d) {
  ordered_json j;
  j["seq"] = d.seq;
  j["agent"] = d.agent.value;
  j["verdict"] = d.verdict ? "fraud" : "legit";
  j["score"] = d.score;
  j["shadow"] = d.shadow;
  j["action"] = to_string(d.action);
  return j.dump();
}

std::vector<PhaseAggregate> phase_aggregates(const std::vector<CycleSummary>& history) {
  std::vector<PhaseAggregate> out;
  for (const auto& c : history) {
    if (out.empty() || out.back().segment != c.segment ||
        out.back().promotions_before != c.promotions_before) {
      PhaseAggregate p;
      p.segment = c.segment;
      p.promotions_before = c.promotions_before;
      p.first_cycle = c.cycle;
      p.name = "segment-" + std::to_string(c.segment);
      if (c.promotions_before > 0) p.name += "/after-promotion-" + std::to_string(c.promotions_before);
      out.push_back(p);
    }
    PhaseAggregate& p = out.back();
    p.last_cycle = c.cycle;
    p.system.true_positives += c.system.true_positives;
    p.system.false_positives += c.system.false_positives;
    p.system.false_negatives += c.system.false_negatives;
    p.system.true_negatives += c.system.true_negatives;
    p.system.samples_seen += c.system.samples_seen;
    p.undecided += c.undecided;
  }
  return out;
}

std::string summary_json(const EngineState& state) {
  ordered_json roster = ordered_json::array();
  for (const auto& a : state.roster) roster.push_back(agent_summary(a));
  ordered_json pool = ordered_json::array();
  for (const auto& a : state.pool) pool.push_back(agent_summary(a));
  ordered_json phases = ordered_json::array();
  for (const auto& p : phase_aggregates(state.history)) {
    ordered_json j = {{"name", p.name},
                      {"segment", p.segment},
                      {"promotions_before", p.promotions_before},
                      {"first_cycle", p.first_cycle},
                      {"last_cycle", p.last_cycle},
                      {"decided", p.system.samples_seen},
                      {"undecided", p.undecided}};
    j.update(window_json(p.system));
    phases.push_back(j);
  }
  ordered_json doc;
  doc["cycles_completed"] = state.next_cycle;
  doc["promotions"] = state.promotions;
  doc["roster"] = roster;
  doc["pool"] = pool;
  doc["phases"] = phases;
  return doc.dump(2) + "\n";
}

RunWriter::RunWriter(const std::filesystem::path& dir, bool emit_detections)
    : events_(open_out(dir / "events.jsonl")),
      metrics_(open_out(dir / "metrics.csv")),
      emit_detections_(emit_detections) {
  metrics_ << kMetricsHeader << '\n';
  if (emit_detections_) detections_ = open_out(dir / "detections.jsonl");
}

void RunWriter::write_cycle(const CycleReport& report) {
  for (const auto& e : report.events) events_ << event_json_line(e) << '\n';
  for (const auto& r : report.rows) metrics_ << metrics_csv_row(r) << '\n';
  metrics_ << system_csv_row(report.summary) << '\n';
  if (emit_detections_) {
    for (const auto& d : report.detections) detections_ << detection_json_line(d) << '\n';
  }
  if (!events_ || !metrics_ || (emit_detections_ && !detections_)) {
    throw std::runtime_error("write to output directory failed");
  }
}

void RunWriter::flush() {
  events_.flush();
  metrics_.flush();
  if (emit_detections_) detections_.flush();
}

}  // namespace rlfa
