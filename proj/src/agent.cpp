#include "arching/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arching {

namespace {
constexpr double kAngleEps = 1e-9;
}

double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

double signed_angle(double a) {
  a = normalize_angle(a);
  return a > kPi ? a - 2.0 * kPi : a;
}

double angular_difference(double a, double b) { return std::abs(signed_angle(a - b)); }

double direction(Cell from, Cell to) {
  return normalize_angle(std::atan2(static_cast<double>(to.y - from.y),
                                    static_cast<double>(to.x - from.x)));
}

void aim_at_nearest_exit(Agent& agent, const WorldGrid& grid) {
  const Cell target = grid.nearest_exit(agent.pos);
  if (target != agent.pos) agent.heading = direction(agent.pos, target);
}

DimensionKind parse_dimension_kind(std::string_view name) {
  if (name == "distance") return DimensionKind::Distance;
  if (name == "heading") return DimensionKind::Heading;
  throw ConfigError("unknown similarity dimension '" + std::string(name) + "'");
}

std::string_view to_string(DimensionKind kind) {
  switch (kind) {
    case DimensionKind::Distance:
      return "distance";
    case DimensionKind::Heading:
      return "heading";
  }
  throw ConfigError("unknown similarity dimension");
}

void SimilaritySpec::validate() const {
  if (dimensions.empty()) throw ConfigError("similarity needs at least one dimension");
  double total = 0.0;
  for (const auto& d : dimensions) {
    if (!(d.weight >= 0.0)) throw ConfigError("similarity weights must be nonnegative");
    total += d.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("similarity weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  if (!(d_max > 0.0)) throw ConfigError("d_max must be positive");
  if (!(trigger_threshold >= 0.0 && trigger_threshold <= 1.0)) {
    throw ConfigError("trigger_threshold must lie in [0, 1]");
  }
}

double dimension_similarity(DimensionKind kind, double x, double y,
                            const SimilaritySpec& spec) {
  switch (kind) {
    case DimensionKind::Distance:
      return std::max(0.0, 1.0 - std::abs(x - y) / spec.d_max);
    case DimensionKind::Heading:
      return 1.0 - angular_difference(x, y) / kPi;
  }
  throw ConfigError("unknown similarity dimension");
}

double similarity(const Agent& x, const Agent& y, const SimilaritySpec& spec) {
  double sum = 0.0;
  for (const auto& d : spec.dimensions) {
    double s = 0.0;
    switch (d.kind) {
      case DimensionKind::Distance:
        s = dimension_similarity(d.kind, 0.0, distance(x.pos, y.pos), spec);
        break;
      case DimensionKind::Heading:
        s = dimension_similarity(d.kind, x.heading, y.heading, spec);
        break;
    }
    sum += s * d.weight;
  }
  return std::clamp(sum, 0.0, 1.0);
}

std::optional<Comparison> most_similar_neighbor(const Agent& self,
                                                std::span<const Agent> visible,
                                                const SimilaritySpec& spec) {
  std::optional<Comparison> best;
  for (const Agent& other : visible) {
    if (other.id == self.id || other.exited) continue;
    const double s = similarity(self, other, spec);
    if (!best || s > best->score || (s == best->score && other.id < best->agent.id)) {
      best = Comparison{other, s};
    }
  }
  return best;
}

bool view_order(const ViewCell& a, const ViewCell& b) {
  if (std::abs(a.distance - b.distance) > kAngleEps) return a.distance < b.distance;
  const double da = std::abs(a.deviation);
  const double db = std::abs(b.deviation);
  if (std::abs(da - db) > kAngleEps) return da < db;
  return a.deviation < b.deviation;
}

std::vector<ViewCell> field_of_desire(const Agent& self, const WorldGrid& grid,
                                      int radius) {
  std::vector<ViewCell> out;
  const double r = static_cast<double>(radius);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const Cell c{self.pos.x + dx, self.pos.y + dy};
      if (!grid.in_bounds(c)) continue;
      const double d = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
      if (d > r + kAngleEps) continue;
      const double dev = signed_angle(direction(self.pos, c) - self.heading);
      if (std::abs(dev) > kHalfCone + kAngleEps) continue;
      out.push_back({c, d, dev});
    }
  }
  std::sort(out.begin(), out.end(), view_order);
  return out;
}

std::optional<Cell> choose_target_cell(std::span<const ViewCell> view,
                                       const WorldGrid& grid) {
  for (const ViewCell& v : view) {
    if (grid.is_free(v.cell)) return v.cell;
  }
  return std::nullopt;
}

std::optional<Cell> choose_target_cell(const Agent& self, const WorldGrid& grid,
                                       int radius) {
  const auto view = field_of_desire(self, grid, radius);
  return choose_target_cell(view, grid);
}

std::optional<Cell> sct_adjust([[maybe_unused]] const Agent& self,
                               const std::optional<Comparison>& comparison,
                               std::optional<Cell> goal_target,
                               std::span<const ViewCell> view,
                               const WorldGrid& grid, const SimilaritySpec& spec) {
  if (!comparison || comparison->score >= spec.trigger_threshold) return goal_target;
  std::optional<Cell> best;
  double best_d = 0.0;
  for (const ViewCell& v : view) {
    if (!grid.is_free(v.cell)) continue;
    const double d = distance(v.cell, comparison->agent.pos);
    if (!best || d < best_d - kAngleEps) {
      best = v.cell;
      best_d = d;
    }
  }
  return best ? best : goal_target;
}

}  // namespace arching
