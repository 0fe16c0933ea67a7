#pragma once

#include <string>
#include <vector>

#include "arching/analysis.hpp"
#include "arching/config.hpp"

namespace arching {

struct SweepJob {
  int c = 0;
  int w = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
};

/// Jobs in (c, w, replicate) order, following the level lists as given.
std::vector<SweepJob> plan_sweep(const SweepConfig& config);

SimConfig job_config(const SweepConfig& config, const SweepJob& job);

struct SweepOutcome {
  MeasurementRow row;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

/// Runs one job and measures its arch. Failures are captured in `error`.
SweepOutcome run_job(const SweepConfig& config, const SweepJob& job);

/// Reference implementation: every job in order on the calling thread.
std::vector<SweepOutcome> run_sweep_serial(const SweepConfig& config);

/// OpenMP worker pool over the same job list. Each job writes only its own
/// slot, so the result equals run_sweep_serial for any thread count.
std::vector<SweepOutcome> run_sweep_parallel(const SweepConfig& config, int threads);

}  // namespace arching
