#include "arching/engine.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace arching {

void SimConfig::validate() const {
  if (c < 0) throw ConfigError("crowd size c must be nonnegative");
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (vision_radius < 1) throw ConfigError("vision_radius must be at least 1");
  if (spawn_margin < 1) throw ConfigError("spawn_margin must be at least 1");
  if (!(arch_threshold_factor > 0.0)) throw ConfigError("arch_threshold_factor must be positive");
  if (arch_persistence < 0) throw ConfigError("arch_persistence must be nonnegative");
  if (!(arch_seed_distance >= 1.0)) throw ConfigError("arch_seed_distance must be at least 1");
  similarity.validate();
  (void)build_world(W, L, w);
  if (spawn_margin >= L) throw ConfigError("spawn_margin must be smaller than L");
  if (c > spawn_cell_count()) {
    throw CrowdTooLarge("crowd too large: c=" + std::to_string(c) + " exceeds the " +
                        std::to_string(spawn_cell_count()) + " spawnable cells");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

void Rng::shuffle(std::vector<int>& values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(below(i));
    std::swap(values[i - 1], values[j]);
  }
}

int StepRecord::exited_count() const {
  int n = 0;
  for (const auto& a : agents) n += a.exited ? 1 : 0;
  return n;
}

int StepRecord::stationary_count() const {
  int n = 0;
  for (const auto& a : agents) n += (!a.exited && !a.moved) ? 1 : 0;
  return n;
}

Simulation::Simulation(const SimConfig& config)
    : config_(config),
      world_((config.validate(), build_world(config.W, config.L, config.w))),
      rng_(config.seed) {
  std::vector<Cell> spawn;
  spawn.reserve(static_cast<std::size_t>(config.spawn_cell_count()));
  for (int y = config.spawn_margin; y < config.L; ++y) {
    for (int x = 0; x < config.W; ++x) spawn.push_back({x, y});
  }
  // Partial Fisher-Yates: the first c slots become the placements.
  for (int i = 0; i < config.c; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   static_cast<std::size_t>(rng_.below(spawn.size() - static_cast<std::size_t>(i)));
    std::swap(spawn[static_cast<std::size_t>(i)], spawn[j]);
  }
  agents_.reserve(static_cast<std::size_t>(config.c));
  for (int i = 0; i < config.c; ++i) {
    Agent a;
    a.id = i;
    a.pos = spawn[static_cast<std::size_t>(i)];
    aim_at_nearest_exit(a, world_);
    world_.occupy(a.pos, a.id);
    agents_.push_back(a);
  }
  remaining_ = config.c;
  order_.resize(agents_.size());
}

Simulation::Simulation(const SimConfig& config, const std::vector<Cell>& placements)
    : config_(config), world_(build_world(config.W, config.L, config.w)), rng_(config.seed) {
  config_.c = static_cast<int>(placements.size());
  for (std::size_t i = 0; i < placements.size(); ++i) {
    Agent a;
    a.id = static_cast<int>(i);
    a.pos = placements[i];
    aim_at_nearest_exit(a, world_);
    world_.occupy(a.pos, a.id);
    agents_.push_back(a);
  }
  remaining_ = config_.c;
  order_.resize(agents_.size());
}

bool Simulation::try_exit(Agent& agent) {
  if (distance(agent.pos, world_.nearest_exit(agent.pos)) >= 1.0) return false;
  world_.vacate(agent.pos);
  agent.exited = true;
  --remaining_;
  ++exits_;
  return true;
}

void Simulation::update_agent(Agent& agent, std::vector<Agent>& scratch) {
  agent.moved_last_step = false;
  if (try_exit(agent)) return;

  aim_at_nearest_exit(agent, world_);
  const auto view = field_of_desire(agent, world_, config_.vision_radius);
  const auto goal = choose_target_cell(view, world_);

  scratch.clear();
  for (const ViewCell& v : view) {
    const int id = world_.occupant(v.cell);
    if (id != kEmpty) scratch.push_back(agents_[static_cast<std::size_t>(id)]);
  }
  const auto comparison = most_similar_neighbor(agent, scratch, config_.similarity);
  const auto target = sct_adjust(agent, comparison, goal, view, world_, config_.similarity);

  if (target) {
    // One pace toward the target, clipped to the 8-neighbourhood.
    const Cell pace{agent.pos.x + (target->x > agent.pos.x) - (target->x < agent.pos.x),
                    agent.pos.y + (target->y > agent.pos.y) - (target->y < agent.pos.y)};
    if (world_.is_free(pace)) {
      world_.move(agent.pos, pace);
      agent.pos = pace;
      agent.moved_last_step = true;
    }
  }
  aim_at_nearest_exit(agent, world_);
  try_exit(agent);
}

StepRecord Simulation::step() {
  ++t_;
  exits_ = 0;
  std::iota(order_.begin(), order_.end(), 0);
  rng_.shuffle(order_);
  std::vector<Agent> scratch;
  for (int idx : order_) {
    Agent& a = agents_[static_cast<std::size_t>(idx)];
    if (a.exited) continue;
    update_agent(a, scratch);
  }
  return snapshot();
}

StepRecord Simulation::snapshot() const {
  StepRecord r;
  r.t = t_;
  r.exits_this_step = exits_;
  r.agents.reserve(agents_.size());
  for (const Agent& a : agents_) {
    r.agents.push_back({a.id, a.pos, a.exited, a.moved_last_step});
  }
  return r;
}

Simulation initialize(const SimConfig& config) { return Simulation(config); }

Trace run(const SimConfig& config) {
  Simulation sim(config);
  Trace trace;
  trace.push_back(sim.snapshot());
  while (!sim.finished() && sim.time() < config.max_steps) trace.push_back(sim.step());
  return trace;
}

void check_invariants(const WorldGrid& world, const StepRecord& record) {
  std::size_t occupying = 0;
  for (const auto& a : record.agents) {
    if (a.exited) {
      if (world.in_bounds(a.pos) && world.occupant(a.pos) == a.id) {
        throw std::logic_error("exited agent still occupies a cell");
      }
      continue;
    }
    ++occupying;
    if (world.occupant(a.pos) != a.id) {
      throw std::logic_error("agent " + std::to_string(a.id) + " not found at its cell");
    }
  }
  if (occupying != world.occupied_count()) {
    throw std::logic_error("occupancy count does not match the live agents");
  }
}

}  // namespace arching
