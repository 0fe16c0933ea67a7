#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace arching {

namespace fs = std::filesystem;

struct RunOptions {
  fs::path config;
  fs::path out;
  std::optional<std::uint64_t> seed;
  bool frames = false;  // also write an SVG frame at arch onset
};

/// Writes trace.csv, summary.csv, measurement.csv and effective_config.txt.
int cmd_run(const RunOptions& options, std::ostream& log, std::ostream& err);

struct SweepOptions {
  std::optional<fs::path> config;  // defaults apply when absent
  fs::path out;
  int parallelism = 1;
  std::optional<std::uint64_t> seed;  // overrides base_seed
};

/// Writes measurements.csv, sweep_table.csv and effective_sweep.txt, plus
/// errors.csv when any run failed (status 2).
int cmd_sweep(const SweepOptions& options, std::ostream& log, std::ostream& err);

struct AnalyzeOptions {
  fs::path measurements;
  fs::path out;
  bool per_replicate = false;
  bool include_saturated = false;
};

/// Writes regression.csv, trends.csv, sweep_table.csv and one
/// onset_c<c>.svg per crowd size.
int cmd_analyze(const AnalyzeOptions& options, std::ostream& log, std::ostream& err);

struct RenderOptions {
  fs::path trace;
  int step = 0;
  std::string format = "ascii";
  /// Geometry source; defaults to effective_config.txt beside the trace.
  std::optional<fs::path> config;
  std::optional<fs::path> out;  // stdout when absent
};

int cmd_render(const RenderOptions& options, std::ostream& out, std::ostream& err);

}  // namespace arching
