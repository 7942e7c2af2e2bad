#include "rlfa/run.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "rlfa/output.hpp"
#include "rlfa/snapshot.hpp"

namespace rlfa {

namespace fs = std::filesystem;

std::filesystem::path snapshot_path(const fs::path& out_dir, std::int64_t cycle) {
  char name[48];
  std::snprintf(name, sizeof name, "cycle-%06lld.json", static_cast<long long>(cycle));
  return out_dir / "snapshots" / name;
}

EngineState execute_run(const RunConfig& cfg, const fs::path& out_dir,
                        const std::optional<fs::path>& resume_from, const CycleObserver& observer) {
  validate_run_config(cfg);
  const std::uint64_t fingerprint = config_fingerprint(cfg);
  EngineState state = resume_from ? read_snapshot(*resume_from, fingerprint) : initial_state(cfg);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  if (cfg.output.snapshot_interval > 0) {
    fs::create_directories(out_dir / "snapshots", ec);
    if (ec) throw std::runtime_error("cannot create snapshot directory: " + ec.message());
  }

  RunWriter writer(out_dir, cfg.output.emit_detections);
  EngineConfig engine = cfg.engine;
  engine.record_detections = engine.record_detections || cfg.output.emit_detections;

  while (state.next_cycle < engine.stream.total_cycles) {
    const CycleReport report = run_cycle(engine, state);
    writer.write_cycle(report);
    if (observer) observer(report, state);
    const auto interval = cfg.output.snapshot_interval;
    if (interval > 0 && report.cycle > 0 && report.cycle % interval == 0) {
      writer.flush();
      write_snapshot(snapshot_path(out_dir, report.cycle), state, fingerprint);
    }
  }
  writer.flush();

  std::ofstream summary(out_dir / "summary.json", std::ios::binary | std::ios::trunc);
  summary << summary_json(state);
  if (!summary) throw std::runtime_error("cannot write summary.json");
  return state;
}

RunConfig resolve_config(const RunOptions& opts) {
  if (opts.config && opts.preset) throw ConfigError("pass either --config or --preset, not both");
  if (!opts.config && !opts.preset) throw ConfigError("one of --config or --preset is required");
  RunConfig cfg = opts.config ? load_run_config(*opts.config) : make_preset(*opts.preset);
  if (opts.seed) cfg.engine.stream.seed = *opts.seed;
  if (opts.out) cfg.output.directory = opts.out->string();
  if (opts.emit_detections) cfg.output.emit_detections = true;
  if (opts.snapshot_interval) {
    if (*opts.snapshot_interval < 0) throw ConfigError("--snapshot-every must be >= 0");
    cfg.output.snapshot_interval = *opts.snapshot_interval;
  }
  return cfg;
}

int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = resolve_config(opts);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  try {
    const EngineState final_state = execute_run(cfg, cfg.output.directory, opts.resume);
    out << "completed " << final_state.next_cycle << " cycles; outputs in " << cfg.output.directory
        << '\n';
    return 0;
  } catch (const SnapshotError& e) {
    err << "snapshot error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int validate_command(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = resolve_config(opts);
    out << "config ok: " << cfg.engine.stream.total_cycles << " cycles, " << cfg.roster.size()
        << " roster agents, " << cfg.pool.size() << " pool agents\n";
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
}

int report_command(const fs::path& dir, std::ostream& out, std::ostream& err) {
  std::ifstream in(dir / "summary.json");
  if (!in) {
    err << "error: no summary.json in " << dir.string() << '\n';
    return 1;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    err << "error: unreadable summary.json: " << e.what() << '\n';
    return 1;
  }
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %7s %7s %8s %8s %9s %9s %9s %9s\n", "phase", "first", "last",
                "decided", "undec.", "precision", "recall", "f1", "accuracy");
  out << line;
  for (const auto& p : doc.at("phases")) {
    std::snprintf(line, sizeof line, "%-32s %7lld %7lld %8llu %8llu %9.4f %9.4f %9.4f %9.4f\n",
                  p.at("name").get<std::string>().c_str(), p.at("first_cycle").get<long long>(),
                  p.at("last_cycle").get<long long>(), p.at("decided").get<unsigned long long>(),
                  p.at("undecided").get<unsigned long long>(), p.at("precision").get<double>(),
                  p.at("recall").get<double>(), p.at("f1").get<double>(), p.at("accuracy").get<double>());
    out << line;
  }
  out << "\nroster:\n";
  for (const auto& a : doc.at("roster")) {
    out << "  #" << a.at("id").get<std::uint64_t>() << ' ' << a.at("name").get<std::string>() << " ["
        << a.at("status").get<std::string>() << "] service_time=" << a.at("service_time").get<long long>()
        << '\n';
  }
  out << "pool:\n";
  for (const auto& a : doc.at("pool")) {
    out << "  #" << a.at("id").get<std::uint64_t>() << ' ' << a.at("name").get<std::string>()
        << " service_time=" << a.at("service_time").get<long long>() << '\n';
  }
  return 0;
}

int preset_command(const std::string& name, std::ostream& out, std::ostream& err) {
  try {
    out << to_yaml(make_preset(name));
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rlfa
