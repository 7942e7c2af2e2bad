#include "rlfa/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rlfa/moe.hpp"
#include "rlfa/scenario.hpp"

namespace rlfa {

namespace {

constexpr std::string_view kSection44 = "section-4.4";

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Mark& mark, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (!mark.is_null()) os << ':' << mark.line + 1 << ':' << mark.column + 1;
    os << ": " << msg;
    throw ConfigError(os.str());
  }
  [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const {
    fail(node.Mark(), msg);
  }

  void expect_map(const YAML::Node& node, std::string_view what,
                  std::initializer_list<std::string_view> allowed) const {
    if (!node.IsMap()) fail(node, std::string(what) + " must be a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) fail(kv.first, "unknown key '" + key + "' in " + std::string(what));
    }
  }

  void expect_seq(const YAML::Node& node, std::string_view what) const {
    if (!node.IsSequence()) fail(node, std::string(what) + " must be a sequence");
  }

  template <typename T>
  T scalar(const YAML::Node& node, std::string_view what) const {
    if (!node.IsScalar()) fail(node, std::string(what) + " must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(node, "cannot parse " + std::string(what) + " from '" + node.Scalar() + "'");
    }
  }

  double real(const YAML::Node& node, std::string_view what, double lo, double hi) const {
    const double v = scalar<double>(node, what);
    if (!std::isfinite(v) || v < lo || v > hi) {
      std::ostringstream os;
      os << what << " = " << node.Scalar() << " outside [" << lo << ", " << hi << "]";
      fail(node, os.str());
    }
    return v;
  }

  std::int64_t integer(const YAML::Node& node, std::string_view what, std::int64_t lo,
                       std::int64_t hi = std::numeric_limits<std::int64_t>::max()) const {
    const auto v = scalar<std::int64_t>(node, what);
    if (v < lo || v > hi) {
      fail(node, std::string(what) + " = " + node.Scalar() + " must be >= " + std::to_string(lo));
    }
    return v;
  }

  Vector vector(const YAML::Node& node, std::string_view what, Eigen::Index len) const {
    expect_seq(node, what);
    if (static_cast<Eigen::Index>(node.size()) != len) {
      fail(node, std::string(what) + " needs " + std::to_string(len) + " entries, got " +
                     std::to_string(node.size()));
    }
    Vector v(len);
    for (Eigen::Index i = 0; i < len; ++i) {
      v[i] = real(node[static_cast<std::size_t>(i)], what, -std::numeric_limits<double>::max(),
                  std::numeric_limits<double>::max());
    }
    return v;
  }

  std::set<std::string> strings(const YAML::Node& node, std::string_view what) const {
    expect_seq(node, what);
    std::set<std::string> out;
    for (const auto& n : node) out.insert(scalar<std::string>(n, what));
    return out;
  }

 private:
  std::string source_;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

Expert read_expert(const Reader& r, const YAML::Node& n) {
  r.expect_map(n, "expert", {"profile", "weights", "threshold"});
  for (const char* k : {"profile", "weights", "threshold"}) {
    if (!n[k]) r.fail(n, std::string("expert is missing '") + k + "'");
  }
  Expert e;
  e.profile = r.vector(n["profile"], "profile", kModalityDim);
  for (Eigen::Index i = 0; i < e.profile.size(); ++i) {
    if (e.profile[i] < 0.0) r.fail(n["profile"], "profile entries must be non-negative");
  }
  e.weight_vector = r.vector(n["weights"], "weights", kFeatureDim);
  e.threshold = r.real(n["threshold"], "threshold", -kInf, kInf);
  return e;
}

Agent read_agent(const Reader& r, const YAML::Node& n, bool in_pool) {
  r.expect_map(n, "agent",
               {"name", "role", "skills", "status", "service_time", "performance", "cost_per_sample",
                "handoff_reliability", "misbehaving", "learning_rate", "gate_weights", "experts"});
  Agent a;
  if (n["name"]) a.name = r.scalar<std::string>(n["name"], "name");
  if (n["role"]) a.role = r.scalar<std::string>(n["role"], "role");
  if (n["skills"]) a.skills = r.strings(n["skills"], "skills");
  if (in_pool) {
    if (n["status"]) r.fail(n["status"], "pool agents are always Released; remove 'status'");
    a.set_status(AgentStatus::Released);
  } else {
    AgentStatus s = AgentStatus::Active;
    if (n["status"]) {
      const auto text = r.scalar<std::string>(n["status"], "status");
      if (text == "Active") {
        s = AgentStatus::Active;
      } else if (text == "Probationary") {
        s = AgentStatus::Probationary;
      } else {
        r.fail(n["status"], "roster status must be Active or Probationary, got '" + text + "'");
      }
    }
    a.set_status(s);
  }
  if (n["service_time"]) a.service_time = r.integer(n["service_time"], "service_time", 0);
  if (n["performance"]) a.performance = r.real(n["performance"], "performance", 0.0, 1.0);
  if (n["cost_per_sample"]) {
    a.cost_per_sample = r.real(n["cost_per_sample"], "cost_per_sample", 0.0, kInf);
    if (!(a.cost_per_sample > 0.0)) r.fail(n["cost_per_sample"], "cost_per_sample must be positive");
  }
  if (n["handoff_reliability"]) {
    a.handoff_reliability = r.real(n["handoff_reliability"], "handoff_reliability", 0.0, 1.0);
  }
  if (n["misbehaving"]) a.misbehaving = r.scalar<bool>(n["misbehaving"], "misbehaving");

  double lr = 0.05;
  if (n["learning_rate"]) {
    lr = r.real(n["learning_rate"], "learning_rate", 0.0, kInf);
    if (!(lr > 0.0)) r.fail(n["learning_rate"], "learning_rate must be positive");
  }
  if (!n["experts"]) r.fail(n, "agent needs 'experts'");
  r.expect_seq(n["experts"], "experts");
  if (n["experts"].size() == 0) r.fail(n["experts"], "agent needs at least one expert");
  std::vector<Expert> experts;
  for (const auto& e : n["experts"]) experts.push_back(read_expert(r, e));
  const auto count = static_cast<Eigen::Index>(experts.size());
  a.moe = make_moe(std::move(experts), lr);
  if (n["gate_weights"]) {
    const Vector g = r.vector(n["gate_weights"], "gate_weights", count);
    if ((g.array() <= 0.0).any()) r.fail(n["gate_weights"], "gate_weights must be positive");
    if (std::abs(g.sum() - 1.0) > 1e-9) r.fail(n["gate_weights"], "gate_weights must sum to 1");
    a.moe.gate_weights = g;
  }
  return a;
}

PatternSpec read_pattern(const Reader& r, const YAML::Node& n) {
  r.expect_map(n, "pattern", {"name", "fraud_rate", "noise", "fraud_offset", "salience", "jitter"});
  PatternSpec p;
  if (!n["name"]) r.fail(n, "pattern needs 'name'");
  p.name = r.scalar<std::string>(n["name"], "name");
  if (n["fraud_rate"]) {
    p.fraud_rate = r.real(n["fraud_rate"], "fraud_rate", 0.0, 1.0);
    if (p.fraud_rate == 0.0 || p.fraud_rate == 1.0) r.fail(n["fraud_rate"], "fraud_rate must lie in (0, 1)");
  }
  if (n["noise"]) {
    p.noise = r.real(n["noise"], "noise", 0.0, kInf);
    if (p.noise == 0.0) r.fail(n["noise"], "noise must be positive");
  }
  if (n["fraud_offset"]) p.fraud_offset = r.vector(n["fraud_offset"], "fraud_offset", kFeatureDim);
  if (n["salience"]) {
    p.salience = r.vector(n["salience"], "salience", kModalityDim);
    if ((p.salience.array() < 0.0).any() || !(p.salience.sum() > 0.0)) {
      r.fail(n["salience"], "salience entries must be non-negative with a positive sum");
    }
  }
  if (n["jitter"]) p.jitter = r.real(n["jitter"], "jitter", 0.0, kInf);
  return p;
}

StreamConfig read_stream(const Reader& r, const YAML::Node& n) {
  r.expect_map(n, "stream", {"seed", "samples_per_cycle", "total_cycles", "patterns", "schedule"});
  StreamConfig s;
  if (n["seed"]) s.seed = r.scalar<std::uint64_t>(n["seed"], "seed");
  if (n["samples_per_cycle"]) s.samples_per_cycle = r.integer(n["samples_per_cycle"], "samples_per_cycle", 1);
  if (!n["total_cycles"]) r.fail(n, "stream needs 'total_cycles'");
  s.total_cycles = r.integer(n["total_cycles"], "total_cycles", 1);
  if (!n["patterns"]) r.fail(n, "stream needs 'patterns'");
  r.expect_seq(n["patterns"], "patterns");
  for (const auto& p : n["patterns"]) s.patterns.push_back(read_pattern(r, p));
  if (!n["schedule"]) r.fail(n, "stream needs 'schedule'");
  r.expect_seq(n["schedule"], "schedule");
  for (const auto& seg : n["schedule"]) {
    r.expect_map(seg, "schedule segment", {"start_cycle", "mixture"});
    DriftSegment d;
    if (!seg["start_cycle"] || !seg["mixture"]) r.fail(seg, "segment needs 'start_cycle' and 'mixture'");
    d.start_cycle = r.integer(seg["start_cycle"], "start_cycle", 0);
    r.expect_seq(seg["mixture"], "mixture");
    for (const auto& m : seg["mixture"]) {
      r.expect_map(m, "mixture entry", {"pattern", "weight"});
      if (!m["pattern"] || !m["weight"]) r.fail(m, "mixture entry needs 'pattern' and 'weight'");
      d.mixture.push_back({r.scalar<std::string>(m["pattern"], "pattern"),
                           r.real(m["weight"], "weight", 0.0, 1.0)});
    }
    s.schedule.segments.push_back(std::move(d));
  }
  try {
    validate_stream(s);
  } catch (const ConfigError& e) {
    r.fail(n, e.what());
  }
  return s;
}

LifecycleConfig read_lifecycle(const Reader& r, const YAML::Node& n) {
  r.expect_map(n, "lifecycle",
               {"release_threshold", "reward_threshold", "sustain_window", "max_service_time",
                "keep_service_time_on_resign"});
  LifecycleConfig c;
  if (n["release_threshold"]) c.release_threshold = r.real(n["release_threshold"], "release_threshold", 0.0, 1.0);
  if (n["reward_threshold"] && !n["reward_threshold"].IsNull()) {
    c.reward_threshold = r.real(n["reward_threshold"], "reward_threshold", -kInf, kInf);
  }
  if (n["sustain_window"]) c.sustain_window = r.integer(n["sustain_window"], "sustain_window", 1);
  if (n["max_service_time"]) c.max_service_time = r.integer(n["max_service_time"], "max_service_time", 1);
  if (n["keep_service_time_on_resign"]) {
    c.keep_service_time_on_resign = r.scalar<bool>(n["keep_service_time_on_resign"], "keep_service_time_on_resign");
  }
  return c;
}

void read_reward(const Reader& r, const YAML::Node& n, RewardWeights& w, RewardConfig& c) {
  r.expect_map(n, "reward", {"alpha", "beta", "gamma", "delta", "baseline_cost_per_sample", "fp_budget"});
  if (n["alpha"]) w.alpha = r.real(n["alpha"], "alpha", 0.0, kInf);
  if (n["beta"]) w.beta = r.real(n["beta"], "beta", 0.0, kInf);
  if (n["gamma"]) w.gamma = r.real(n["gamma"], "gamma", 0.0, kInf);
  if (n["delta"]) w.delta = r.real(n["delta"], "delta", 0.0, kInf);
  if (n["baseline_cost_per_sample"]) {
    c.baseline_cost_per_sample = r.real(n["baseline_cost_per_sample"], "baseline_cost_per_sample", 0.0, kInf);
    if (c.baseline_cost_per_sample == 0.0) r.fail(n["baseline_cost_per_sample"], "baseline_cost_per_sample must be positive");
  }
  if (n["fp_budget"]) c.fp_budget = r.real(n["fp_budget"], "fp_budget", 0.0, 1.0);
}

OutputOptions read_output(const Reader& r, const YAML::Node& n) {
  r.expect_map(n, "output", {"directory", "emit_detections", "snapshot_interval"});
  OutputOptions o;
  if (n["directory"]) o.directory = r.scalar<std::string>(n["directory"], "directory");
  if (n["emit_detections"]) o.emit_detections = r.scalar<bool>(n["emit_detections"], "emit_detections");
  if (n["snapshot_interval"]) o.snapshot_interval = r.integer(n["snapshot_interval"], "snapshot_interval", 0);
  return o;
}

void emit_vector(YAML::Emitter& out, const Vector& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i];
  out << YAML::EndSeq;
}

void emit_agent(YAML::Emitter& out, const Agent& a, bool in_pool) {
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << a.name;
  out << YAML::Key << "role" << YAML::Value << a.role;
  out << YAML::Key << "skills" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& s : a.skills) out << s;
  out << YAML::EndSeq;
  if (!in_pool) out << YAML::Key << "status" << YAML::Value << std::string(to_string(a.status));
  out << YAML::Key << "service_time" << YAML::Value << a.service_time;
  out << YAML::Key << "performance" << YAML::Value << a.performance;
  out << YAML::Key << "cost_per_sample" << YAML::Value << a.cost_per_sample;
  out << YAML::Key << "handoff_reliability" << YAML::Value << a.handoff_reliability;
  out << YAML::Key << "misbehaving" << YAML::Value << a.misbehaving;
  out << YAML::Key << "learning_rate" << YAML::Value << a.moe.learning_rate;
  out << YAML::Key << "gate_weights" << YAML::Value;
  emit_vector(out, a.moe.gate_weights);
  out << YAML::Key << "experts" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : a.moe.experts) {
    out << YAML::BeginMap;
    out << YAML::Key << "profile" << YAML::Value;
    emit_vector(out, e.profile);
    out << YAML::Key << "weights" << YAML::Value;
    emit_vector(out, e.weight_vector);
    out << YAML::Key << "threshold" << YAML::Value << e.threshold;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
}

}  // namespace

RunConfig parse_run_config(std::string_view yaml_text, std::string_view source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    r.fail(e.mark, e.msg);
  }
  r.expect_map(root, "config", {"stream", "lifecycle", "reward", "roles", "roster", "pool", "output"});

  RunConfig cfg;
  if (!root["stream"]) r.fail(root, "config needs a 'stream' section");
  cfg.engine.stream = read_stream(r, root["stream"]);
  if (root["lifecycle"]) cfg.engine.lifecycle = read_lifecycle(r, root["lifecycle"]);
  if (root["reward"]) read_reward(r, root["reward"], cfg.engine.weights, cfg.engine.reward);
  if (root["roles"]) {
    r.expect_seq(root["roles"], "roles");
    cfg.engine.roles.clear();
    for (const auto& n : root["roles"]) {
      r.expect_map(n, "role", {"role", "required_skills"});
      if (!n["role"]) r.fail(n, "role entry needs 'role'");
      VacantRole role{r.scalar<std::string>(n["role"], "role"), {}};
      if (n["required_skills"]) role.required_skills = r.strings(n["required_skills"], "required_skills");
      cfg.engine.roles.push_back(std::move(role));
    }
  }
  if (root["roster"]) {
    r.expect_seq(root["roster"], "roster");
    for (const auto& n : root["roster"]) cfg.roster.push_back(read_agent(r, n, false));
  }
  if (root["pool"]) {
    r.expect_seq(root["pool"], "pool");
    for (const auto& n : root["pool"]) cfg.pool.push_back(read_agent(r, n, true));
  }
  if (root["output"]) cfg.output = read_output(r, root["output"]);

  try {
    validate_run_config(cfg);
  } catch (const ConfigError& e) {
    r.fail(root, e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.string());
}

void validate_run_config(const RunConfig& cfg) {
  validate_engine(cfg.engine);
  for (const auto* group : {&cfg.roster, &cfg.pool}) {
    for (const auto& a : *group) {
      validate_moe(a.moe, kModalityDim, kFeatureDim);
      if (group == &cfg.roster && a.status == AgentStatus::Released) {
        throw ConfigError("roster agent '" + a.name + "' cannot be Released");
      }
    }
  }
  if (cfg.output.snapshot_interval < 0) throw ConfigError("snapshot_interval must be >= 0");
}

std::string to_yaml(const RunConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  const auto& s = cfg.engine.stream;
  out << YAML::BeginMap;

  out << YAML::Key << "stream" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "samples_per_cycle" << YAML::Value << s.samples_per_cycle;
  out << YAML::Key << "total_cycles" << YAML::Value << s.total_cycles;
  out << YAML::Key << "patterns" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : s.patterns) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << p.name;
    out << YAML::Key << "fraud_rate" << YAML::Value << p.fraud_rate;
    out << YAML::Key << "noise" << YAML::Value << p.noise;
    out << YAML::Key << "fraud_offset" << YAML::Value;
    emit_vector(out, p.fraud_offset);
    out << YAML::Key << "salience" << YAML::Value;
    emit_vector(out, p.salience);
    out << YAML::Key << "jitter" << YAML::Value << p.jitter;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
  for (const auto& seg : s.schedule.segments) {
    out << YAML::BeginMap << YAML::Key << "start_cycle" << YAML::Value << seg.start_cycle;
    out << YAML::Key << "mixture" << YAML::Value << YAML::BeginSeq;
    for (const auto& m : seg.mixture) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "pattern" << YAML::Value << m.pattern
          << YAML::Key << "weight" << YAML::Value << m.weight << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  const auto& l = cfg.engine.lifecycle;
  out << YAML::Key << "lifecycle" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "release_threshold" << YAML::Value << l.release_threshold;
  out << YAML::Key << "reward_threshold" << YAML::Value;
  if (l.reward_threshold) {
    out << *l.reward_threshold;
  } else {
    out << YAML::Null;
  }
  out << YAML::Key << "sustain_window" << YAML::Value << l.sustain_window;
  out << YAML::Key << "max_service_time" << YAML::Value << l.max_service_time;
  out << YAML::Key << "keep_service_time_on_resign" << YAML::Value << l.keep_service_time_on_resign;
  out << YAML::EndMap;

  const auto& w = cfg.engine.weights;
  out << YAML::Key << "reward" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "alpha" << YAML::Value << w.alpha;
  out << YAML::Key << "beta" << YAML::Value << w.beta;
  out << YAML::Key << "gamma" << YAML::Value << w.gamma;
  out << YAML::Key << "delta" << YAML::Value << w.delta;
  out << YAML::Key << "baseline_cost_per_sample" << YAML::Value << cfg.engine.reward.baseline_cost_per_sample;
  out << YAML::Key << "fp_budget" << YAML::Value << cfg.engine.reward.fp_budget;
  out << YAML::EndMap;

  out << YAML::Key << "roles" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : cfg.engine.roles) {
    out << YAML::BeginMap << YAML::Key << "role" << YAML::Value << r.role;
    out << YAML::Key << "required_skills" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& sk : r.required_skills) out << sk;
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "roster" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : cfg.roster) emit_agent(out, a, false);
  out << YAML::EndSeq;
  out << YAML::Key << "pool" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : cfg.pool) emit_agent(out, a, true);
  out << YAML::EndSeq;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << cfg.output.directory;
  out << YAML::Key << "emit_detections" << YAML::Value << cfg.output.emit_detections;
  out << YAML::Key << "snapshot_interval" << YAML::Value << cfg.output.snapshot_interval;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::uint64_t config_fingerprint(const RunConfig& cfg) {
  RunConfig canonical = cfg;
  canonical.output = OutputOptions{};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_yaml(canonical)) {
    h ^= c;
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

std::vector<std::string> preset_names() { return {std::string(kSection44)}; }

RunConfig make_preset(std::string_view name) {
  if (name != kSection44) throw ConfigError("unknown preset '" + std::string(name) + "'");

  const ScenarioSpec spec;
  const ScenarioStream stream = make_scenario_stream(spec, 42, 1000, 30);
  ScenarioAgents agents = make_scenario_agents(spec, stream);

  RunConfig cfg;
  cfg.engine.stream = stream.stream;
  cfg.engine.lifecycle = LifecycleConfig{};
  cfg.engine.roles = {{std::string(kFraudRole), {"numeric", "pattern-B"}}};

  // A weaker pattern-B agent: behavior feature only, no sensitive-suffix weight.
  Agent rookie = agents.candidate;
  rookie.name = "pattern-b-rookie";
  rookie.performance = 0.60;
  rookie.moe.experts[1].weight_vector.setZero();
  rookie.moe.experts[1].weight_vector[2] = 1.0;
  rookie.moe.experts[1].threshold = stream.stream.pattern("B").fraud_offset[2] / 2.0;

  // Qualifies for nothing: lacks the pattern-B skill.
  Agent legacy = agents.incumbent;
  legacy.name = "legacy-text";
  legacy.skills = {"text"};
  legacy.performance = 0.90;
  legacy.set_status(AgentStatus::Released);

  cfg.roster = {agents.incumbent};
  cfg.pool = {legacy, agents.candidate, rookie};
  return cfg;
}

EngineState initial_state(const RunConfig& cfg) {
  EngineState s;
  for (const auto& a : cfg.roster) admit_agent(s, a);
  for (auto a : cfg.pool) {
    a.set_status(AgentStatus::Released);
    admit_agent(s, std::move(a));
  }
  return s;
}

}  // namespace rlfa
