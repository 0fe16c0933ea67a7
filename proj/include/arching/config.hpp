#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "arching/engine.hpp"
#include "arching/metrics.hpp"

namespace arching {

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// Duplicate keys and malformed lines raise ConfigError with the line number.
std::map<std::string, std::string> parse_key_values(const std::string& text);

std::string read_file(const std::filesystem::path& path);

/// Unknown keys raise ConfigError. When `d_max` is absent it follows
/// `vision_radius`. The result is validated.
SimConfig sim_config_from_text(const std::string& text);
SimConfig load_sim_config(const std::filesystem::path& path);

/// Effective configuration with every default resolved; feeding it back
/// through sim_config_from_text reproduces the same config.
std::string to_text(const SimConfig& config);

ArchParams arch_params(const SimConfig& config);

struct SweepConfig {
  std::vector<int> c_levels{200, 300, 350, 400, 450};
  std::vector<int> w_levels{1, 3, 5, 7, 9, 11, 13};
  int W = 19;
  int replicates = 3;
  std::uint64_t base_seed = 1;
  /// Engine defaults shared by every run; c, w, W and seed are set per run.
  SimConfig engine{};

  void validate() const;
};

SweepConfig sweep_config_from_text(const std::string& text);
SweepConfig load_sweep_config(const std::filesystem::path& path);
std::string to_text(const SweepConfig& config);

/// Per-run seed: splitmix64 folded over base_seed, c, w and the replicate
/// index, so any sweep cell can be rerun on its own.
std::uint64_t derive_seed(std::uint64_t base_seed, int c, int w, int replicate);

inline constexpr int kSchemaVersion = 1;

}  // namespace arching
