#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rlfa/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Free-agent roster engine for mixture-of-experts fraud detectors"};
  app.require_subcommand(1);

  rlfa::RunOptions run_opts;
  std::string config;
  std::string preset;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::int64_t snapshot_every = 0;
  std::string resume;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "YAML run config");
    cmd->add_option("--preset", preset, "built-in preset (section-4.4)");
    cmd->add_option("--seed", seed, "override the stream seed");
  };

  auto* run = app.add_subcommand("run", "execute a run and write outputs");
  add_source(run);
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--emit-detections", run_opts.emit_detections, "write detections.jsonl");
  run->add_option("--snapshot-every", snapshot_every, "write a state snapshot every N cycles");
  run->add_option("--resume", resume, "continue from a snapshot file");

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  add_source(validate);

  std::string report_dir;
  auto* report = app.add_subcommand("report", "print the phase summary of an output directory");
  report->add_option("dir", report_dir, "output directory")->required();

  std::string preset_name;
  auto* dump = app.add_subcommand("preset", "print a built-in preset as YAML");
  dump->add_option("name", preset_name, "preset name")->required();

  CLI11_PARSE(app, argc, argv);

  if (!config.empty()) run_opts.config = config;
  if (!preset.empty()) run_opts.preset = preset;
  if (app.got_subcommand(run) || app.got_subcommand(validate)) {
    auto* cmd = app.got_subcommand(run) ? run : validate;
    if (cmd->count("--seed") > 0) run_opts.seed = seed;
  }
  if (!out_dir.empty()) run_opts.out = out_dir;
  if (run->count("--snapshot-every") > 0) run_opts.snapshot_interval = snapshot_every;
  if (!resume.empty()) run_opts.resume = resume;

  if (app.got_subcommand(run)) return rlfa::run_command(run_opts, std::cout, std::cerr);
  if (app.got_subcommand(validate)) return rlfa::validate_command(run_opts, std::cout, std::cerr);
  if (app.got_subcommand(report)) return rlfa::report_command(report_dir, std::cout, std::cerr);
  return rlfa::preset_command(preset_name, std::cout, std::cerr);
}
