#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "arching/agent.hpp"
#include "arching/world.hpp"

namespace arching {

class CrowdTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every tunable of a single run, including the arch detector thresholds.
struct SimConfig {
  int c = 400;  // crowd size
  int w = 7;    // exit width
  int W = 19;   // corridor width
  int L = 60;   // corridor length
  std::uint64_t seed = 1;
  int max_steps = 5000;
  int vision_radius = 3;
  int spawn_margin = 5;
  SimilaritySpec similarity{};
  double arch_threshold_factor = 3.0;
  int arch_persistence = 3;
  double arch_seed_distance = 2.0;

  /// Throws ConfigError / InvalidDimensions / CrowdTooLarge.
  void validate() const;
  int spawn_cell_count() const { return W * (L - spawn_margin); }
};

/// Deterministic generator. Bounded draws and shuffles are implemented here
/// rather than through <random> distributions, whose output differs between
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  void shuffle(std::vector<int>& values);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct AgentState {
  int id;
  Cell pos;
  bool exited;
  bool moved;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct StepRecord {
  int t = 0;
  std::vector<AgentState> agents;  // indexed by agent id
  int exits_this_step = 0;

  int exited_count() const;
  int stationary_count() const;  // non-exited agents that did not move

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

using Trace = std::vector<StepRecord>;

class Simulation {
 public:
  /// Seeds the crowd uniformly over the cells at least `spawn_margin` rows
  /// from the exit wall and aims every agent at its nearest exit cell.
  explicit Simulation(const SimConfig& config);

  /// Builds a simulation from explicit agent placements (tests and replays).
  Simulation(const SimConfig& config, const std::vector<Cell>& placements);

  /// Advances one time step: every remaining agent, in a fresh random order,
  /// takes at most one pace and exits once within distance 1 of an exit cell.
  StepRecord step();

  StepRecord snapshot() const;
  bool finished() const { return remaining_ == 0; }
  int time() const { return t_; }

  const WorldGrid& world() const { return world_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const SimConfig& config() const { return config_; }

 private:
  void update_agent(Agent& agent, std::vector<Agent>& scratch);
  bool try_exit(Agent& agent);

  SimConfig config_;
  WorldGrid world_;
  std::vector<Agent> agents_;
  Rng rng_;
  std::vector<int> order_;
  int t_ = 0;
  int remaining_ = 0;
  int exits_ = 0;
};

Simulation initialize(const SimConfig& config);

/// Runs to completion or max_steps; the trace starts with the t = 0 state.
Trace run(const SimConfig& config);

/// Throws std::logic_error when a record breaks the occupancy or
/// conservation invariants against the world's occupancy.
void check_invariants(const WorldGrid& world, const StepRecord& record);

}  // namespace arching
