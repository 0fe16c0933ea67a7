#include "arching/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <ostream>

#include "arching/analysis.hpp"
#include "arching/config.hpp"
#include "arching/csv_io.hpp"
#include "arching/metrics.hpp"
#include "arching/render.hpp"
#include "arching/sweep.hpp"

namespace arching {

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& log, std::ostream& err) {
  try {
    SimConfig cfg = load_sim_config(options.config);
    if (options.seed) cfg.seed = *options.seed;
    ensure_dir(options.out);

    const Trace trace = run(cfg);
    const WorldGrid world = build_world(cfg.W, cfg.L, cfg.w);
    MeasurementRow row{cfg.c, cfg.w, cfg.W, cfg.seed, 0,
                       detect_arch_onset(trace, world, arch_params(cfg))};

    {
      auto f = open_out(options.out / "trace.csv");
      write_trace_csv(f, trace);
    }
    {
      auto f = open_out(options.out / "summary.csv");
      write_summary_csv(f, trace);
    }
    {
      auto f = open_out(options.out / "measurement.csv");
      write_measurement_csv(f, std::span<const MeasurementRow>(&row, 1));
    }
    {
      auto f = open_out(options.out / "effective_config.txt");
      f << to_text(cfg);
    }
    if (options.frames && row.arch.detected) {
      auto f = open_out(options.out / fmt::format("frame_t{}.svg", row.arch.T));
      f << render_svg(world, trace[static_cast<std::size_t>(row.arch.T)]);
    }
    const auto& last = trace.back();
    fmt::print(log, "steps={} exited={}/{} arch={}", last.t, last.exited_count(), cfg.c,
               row.arch.detected ? 1 : 0);
    if (row.arch.detected) {
      fmt::print(log, " T={} M={} m={} cluster={}", row.arch.T, row.arch.M, row.arch.m,
                 row.arch.cluster_size);
    }
    log << '\n';
    return 0;
  } catch (const std::exception& e) {
    fmt::print(err, "run: {}\n", e.what());
    return 1;
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& log, std::ostream& err) {
  try {
    SweepConfig cfg = options.config ? load_sweep_config(*options.config) : SweepConfig{};
    if (options.seed) cfg.base_seed = *options.seed;
    cfg.validate();
    if (options.parallelism < 1) throw ConfigError("parallelism must be at least 1");
    ensure_dir(options.out);

    const auto outcomes = run_sweep_parallel(cfg, options.parallelism);
    std::vector<MeasurementRow> rows;
    int failures = 0;
    for (const auto& o : outcomes) {
      if (o.ok()) {
        rows.push_back(o.row);
      } else {
        ++failures;
      }
    }
    canonical_sort(rows);
    {
      auto f = open_out(options.out / "measurements.csv");
      write_measurement_csv(f, rows);
    }
    {
      auto f = open_out(options.out / "sweep_table.csv");
      write_sweep_table_csv(f, aggregate(rows));
    }
    {
      auto f = open_out(options.out / "effective_sweep.txt");
      f << to_text(cfg);
    }
    if (failures > 0) {
      auto f = open_out(options.out / "errors.csv");
      write_errors_csv(f, outcomes);
      fmt::print(err, "sweep: {} of {} runs failed, see errors.csv\n", failures, outcomes.size());
    }
    fmt::print(log, "runs={} failed={}\n", outcomes.size(), failures);
    return failures > 0 ? 2 : 0;
  } catch (const std::exception& e) {
    fmt::print(err, "sweep: {}\n", e.what());
    return 1;
  }
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& log, std::ostream& err) {
  try {
    std::ifstream in(options.measurements, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + options.measurements.string() + "'");
    const auto rows = read_measurement_csv(in);
    if (rows.empty()) throw CsvError("measurements: no data rows");
    ensure_dir(options.out);

    const SweepTable table = aggregate(rows);
    const auto fits = regress_onset_on_width(table, rows, options.per_replicate);
    const TrendReport trends = trend_report(table, options.include_saturated);
    {
      auto f = open_out(options.out / "regression.csv");
      write_regression_csv(f, fits);
    }
    {
      auto f = open_out(options.out / "trends.csv");
      write_trends_csv(f, trends, options.include_saturated);
    }
    {
      auto f = open_out(options.out / "sweep_table.csv");
      write_sweep_table_csv(f, table);
    }
    for (const auto& cf : fits) {
      std::vector<Point> means;
      for (const auto& cell : table.cells) {
        if (cell.c == cf.c && !cell.empty()) means.emplace_back(cell.w, cell.T.mean);
      }
      auto f = open_out(options.out / fmt::format("onset_c{}.svg", cf.c));
      f << onset_plot_svg(cf.c, means, cf.fit);
      if (cf.fit) {
        fmt::print(log, "c={} T = {:.3f} w + {:.3f}  R2={:.3f} n={}\n", cf.c, cf.fit->slope,
                   cf.fit->intercept, cf.fit->r_squared, cf.fit->n);
      } else {
        fmt::print(log, "c={} no fit (fewer than two usable widths)\n", cf.c);
      }
    }
    return 0;
  } catch (const std::exception& e) {
    fmt::print(err, "analyze: {}\n", e.what());
    return 1;
  }
}

int cmd_render(const RenderOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "ascii" && options.format != "svg") {
      throw ConfigError("unknown format '" + options.format + "' (expected ascii or svg)");
    }
    const fs::path cfg_path =
        options.config ? *options.config : options.trace.parent_path() / "effective_config.txt";
    const SimConfig cfg = load_sim_config(cfg_path);
    std::ifstream in(options.trace, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + options.trace.string() + "'");
    const Trace trace = read_trace_csv(in);

    const StepRecord* frame = nullptr;
    for (const auto& r : trace) {
      if (r.t == options.step) frame = &r;
    }
    if (frame == nullptr) {
      const int last = trace.empty() ? -1 : trace.back().t;
      throw std::out_of_range(
          fmt::format("step {} out of range (trace covers 0..{})", options.step, last));
    }
    const WorldGrid world = build_world(cfg.W, cfg.L, cfg.w);
    const std::string text =
        options.format == "svg" ? render_svg(world, *frame) : render_ascii(world, *frame);
    if (options.out) {
      auto f = open_out(*options.out);
      f << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    fmt::print(err, "render: {}\n", e.what());
    return 1;
  }
}

}  // namespace arching
