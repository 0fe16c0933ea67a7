#include "arching/sweep.hpp"

#include <stdexcept>

namespace arching {

std::vector<SweepJob> plan_sweep(const SweepConfig& config) {
  std::vector<SweepJob> jobs;
  jobs.reserve(config.c_levels.size() * config.w_levels.size() *
               static_cast<std::size_t>(config.replicates));
  for (int c : config.c_levels) {
    for (int w : config.w_levels) {
      for (int r = 0; r < config.replicates; ++r) {
        jobs.push_back({c, w, r, derive_seed(config.base_seed, c, w, r)});
      }
    }
  }
  return jobs;
}

SimConfig job_config(const SweepConfig& config, const SweepJob& job) {
  SimConfig cfg = config.engine;
  cfg.c = job.c;
  cfg.w = job.w;
  cfg.W = config.W;
  cfg.seed = job.seed;
  return cfg;
}

SweepOutcome run_job(const SweepConfig& config, const SweepJob& job) {
  SweepOutcome out;
  out.row.c = job.c;
  out.row.w = job.w;
  out.row.W = config.W;
  out.row.seed = job.seed;
  out.row.replicate = job.replicate;
  try {
    const SimConfig cfg = job_config(config, job);
    const Trace trace = run(cfg);
    const WorldGrid world = build_world(cfg.W, cfg.L, cfg.w);
    out.row.arch = detect_arch_onset(trace, world, arch_params(cfg));
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<SweepOutcome> run_sweep_serial(const SweepConfig& config) {
  const auto jobs = plan_sweep(config);
  std::vector<SweepOutcome> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(run_job(config, job));
  return out;
}

std::vector<SweepOutcome> run_sweep_parallel(const SweepConfig& config, int threads) {
  if (threads < 1) throw std::invalid_argument("parallelism must be at least 1");
  const auto jobs = plan_sweep(config);
  std::vector<SweepOutcome> out(jobs.size());
  const auto n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_job(config, jobs[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace arching
