#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arching {

/// Grid coordinate: x is transverse (across the corridor), y is longitudinal
/// (distance from the exit wall, which sits at y = 0).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

double distance(Cell a, Cell b);

class InvalidDimensions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kEmpty = -1;

/// Discrete corridor of width W and length L. Row y = 0 is the end wall; the
/// exit segment is a contiguous run of w cells in that row, every other cell
/// of the row is wall. Anything outside [0, W) x [0, L) is wall as well.
class WorldGrid {
 public:
  WorldGrid(int corridor_width, int corridor_length, int exit_width);

  int width() const { return width_; }
  int length() const { return length_; }
  int exit_width() const { return static_cast<int>(exits_.size()); }

  /// Exit cells ordered by increasing transverse index.
  const std::vector<Cell>& exit_cells() const { return exits_; }
  int exit_begin() const { return exits_.front().x; }
  /// Transverse midpoint of the exit segment (cell-centre coordinates).
  double exit_center_x() const;

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < length_;
  }
  bool is_exit(Cell c) const;
  bool is_wall(Cell c) const;

  int occupant(Cell c) const;
  bool is_free(Cell c) const;

  /// Places `id` on a free cell. Throws std::logic_error when the cell is
  /// not free.
  void occupy(Cell c, int id);
  void vacate(Cell c);
  void move(Cell from, Cell to);

  /// Exit cell at minimal Euclidean distance; ties go to the lowest
  /// transverse index.
  Cell nearest_exit(Cell pos) const;

  std::size_t occupied_count() const { return occupied_; }

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }

  int width_;
  int length_;
  std::vector<Cell> exits_;
  std::vector<int> occupancy_;
  std::size_t occupied_ = 0;
};

/// Validates the dimensions and builds the corridor. When W - w is odd the
/// spare margin cell goes to the high-index side, so the segment sits half a
/// cell toward index 0.
WorldGrid build_world(int corridor_width, int corridor_length, int exit_width);

inline bool is_free(const WorldGrid& grid, Cell c) { return grid.is_free(c); }
inline Cell nearest_exit_coordinate(const WorldGrid& grid, Cell pos) {
  return grid.nearest_exit(pos);
}

}  // namespace arching
