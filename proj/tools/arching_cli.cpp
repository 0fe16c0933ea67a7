// Command-line front end: run, sweep, analyze, render.

#include <CLI11.hpp>

#include <iostream>

#include "arching/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian egress microsimulation and arch-formation experiments"};
  app.require_subcommand(1);

  arching::RunOptions run_opts;
  std::uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "Simulate one configuration");
  run->add_option("--config", run_opts.config, "Run configuration file")->required();
  run->add_option("--out", run_opts.out, "Output directory")->required();
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the configured seed");
  run->add_flag("--frames", run_opts.frames, "Also write an SVG frame at arch onset");

  arching::SweepOptions sweep_opts;
  std::string sweep_cfg;
  std::uint64_t sweep_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Run the crowd-size x exit-width factorial");
  auto* sweep_cfg_opt = sweep->add_option("--config", sweep_cfg, "Sweep configuration file");
  sweep->add_option("--out", sweep_opts.out, "Output directory")->required();
  sweep->add_option("--parallelism", sweep_opts.parallelism, "Worker threads")
      ->check(CLI::PositiveNumber);
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Override base_seed");

  arching::AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Regressions and trend correlations");
  analyze->add_option("measurements", analyze_opts.measurements, "Measurement CSV")->required();
  analyze->add_option("--out", analyze_opts.out, "Output directory")->required();
  analyze->add_flag("--per-replicate", analyze_opts.per_replicate,
                    "Fit every detected run instead of cell means");
  analyze->add_flag("--include-saturated", analyze_opts.include_saturated,
                    "Keep cells whose m reached the corridor width in the trends");

  arching::RenderOptions render_opts;
  std::string render_cfg;
  std::string render_out;
  auto* render = app.add_subcommand("render", "Draw one frame of a trace");
  render->add_option("trace", render_opts.trace, "Trace CSV")->required();
  render->add_option("--step", render_opts.step, "Time step to draw")->required();
  render->add_option("--format", render_opts.format, "ascii or svg")
      ->check(CLI::IsMember({"ascii", "svg"}));
  auto* render_cfg_opt =
      render->add_option("--config", render_cfg, "Run configuration (geometry)");
  auto* render_out_opt = render->add_option("--out", render_out, "Output file");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (*run_seed_opt) run_opts.seed = run_seed;
    return arching::cmd_run(run_opts, std::cout, std::cerr);
  }
  if (*sweep) {
    if (*sweep_cfg_opt) sweep_opts.config = sweep_cfg;
    if (*sweep_seed_opt) sweep_opts.seed = sweep_seed;
    return arching::cmd_sweep(sweep_opts, std::cout, std::cerr);
  }
  if (*analyze) return arching::cmd_analyze(analyze_opts, std::cout, std::cerr);
  if (*render_cfg_opt) render_opts.config = render_cfg;
  if (*render_out_opt) render_opts.out = render_out;
  return arching::cmd_render(render_opts, std::cout, std::cerr);
}
