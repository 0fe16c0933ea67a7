#include "arching/world.hpp"

#include <cmath>

namespace arching {

double distance(Cell a, Cell b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

WorldGrid::WorldGrid(int corridor_width, int corridor_length, int exit_width)
    : width_(corridor_width), length_(corridor_length) {
  if (exit_width < 1 || exit_width > corridor_width) {
    throw InvalidDimensions("exit width " + std::to_string(exit_width) +
                            " must lie in [1, " + std::to_string(corridor_width) + "]");
  }
  if (corridor_length <= corridor_width) {
    throw InvalidDimensions("corridor length " + std::to_string(corridor_length) +
                            " must exceed corridor width " +
                            std::to_string(corridor_width));
  }
  const int offset = (corridor_width - exit_width) / 2;
  exits_.reserve(static_cast<std::size_t>(exit_width));
  for (int i = 0; i < exit_width; ++i) exits_.push_back({offset + i, 0});
  occupancy_.assign(static_cast<std::size_t>(width_) * static_cast<std::size_t>(length_),
                    kEmpty);
}

double WorldGrid::exit_center_x() const {
  return 0.5 * static_cast<double>(exits_.front().x + exits_.back().x);
}

bool WorldGrid::is_exit(Cell c) const {
  return c.y == 0 && c.x >= exits_.front().x && c.x <= exits_.back().x;
}

bool WorldGrid::is_wall(Cell c) const {
  if (!in_bounds(c)) return true;
  return c.y == 0 && !is_exit(c);
}

int WorldGrid::occupant(Cell c) const {
  if (!in_bounds(c)) return kEmpty;
  return occupancy_[index(c)];
}

bool WorldGrid::is_free(Cell c) const {
  return !is_wall(c) && occupancy_[index(c)] == kEmpty;
}

void WorldGrid::occupy(Cell c, int id) {
  if (!is_free(c)) throw std::logic_error("occupy: cell is not free");
  occupancy_[index(c)] = id;
  ++occupied_;
}

void WorldGrid::vacate(Cell c) {
  if (!in_bounds(c) || occupancy_[index(c)] == kEmpty) {
    throw std::logic_error("vacate: cell is not occupied");
  }
  occupancy_[index(c)] = kEmpty;
  --occupied_;
}

void WorldGrid::move(Cell from, Cell to) {
  const int id = occupant(from);
  vacate(from);
  occupy(to, id);
}

Cell WorldGrid::nearest_exit(Cell pos) const {
  // Strict comparison keeps the lowest transverse index on ties.
  Cell best = exits_.front();
  double best_d = distance(pos, best);
  for (const Cell& e : exits_) {
    const double d = distance(pos, e);
    if (d < best_d) {
      best = e;
      best_d = d;
    }
  }
  return best;
}

WorldGrid build_world(int corridor_width, int corridor_length, int exit_width) {
  return WorldGrid(corridor_width, corridor_length, exit_width);
}

}  // namespace arching
