#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arching/world.hpp"

namespace arching {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
/// Half of the 100 degree field of desire.
inline constexpr double kHalfCone = 50.0 * kPi / 180.0;

/// Simulated pedestrian. The attribute tuple compared under social
/// comparison is (position, heading).
struct Agent {
  int id = 0;
  Cell pos;
  double heading = 0.0;  // radians in [0, 2pi), x axis = 0, toward +y = pi/2
  bool exited = false;
  bool moved_last_step = false;
};

double normalize_angle(double a);  // -> [0, 2pi)
double signed_angle(double a);     // -> (-pi, pi]
double angular_difference(double a, double b);  // minimal, in [0, pi]
double direction(Cell from, Cell to);

/// Points the agent at its nearest exit cell. Leaves the heading untouched
/// when the agent already stands on that cell.
void aim_at_nearest_exit(Agent& agent, const WorldGrid& grid);

enum class DimensionKind { Distance, Heading };

DimensionKind parse_dimension_kind(std::string_view name);
std::string_view to_string(DimensionKind kind);

struct Dimension {
  DimensionKind kind;
  double weight;
};

struct SimilaritySpec {
  std::vector<Dimension> dimensions{{DimensionKind::Distance, 0.5},
                                    {DimensionKind::Heading, 0.5}};
  double d_max = 3.0;
  double trigger_threshold = 0.5;

  /// Throws ConfigError unless weights are nonnegative and sum to 1,
  /// d_max > 0 and the threshold lies in [0, 1].
  void validate() const;
};

/// Per-dimension similarity in [0, 1]. For Distance the two values are
/// positions along the separation line, so only |x - y| matters; for Heading
/// they are angles in radians.
double dimension_similarity(DimensionKind kind, double x, double y,
                            const SimilaritySpec& spec);

/// Weighted sum of the per-dimension similarities.
double similarity(const Agent& x, const Agent& y, const SimilaritySpec& spec);

struct Comparison {
  Agent agent;
  double score;
};

/// Highest-similarity agent among `visible`; ties go to the lowest id.
std::optional<Comparison> most_similar_neighbor(const Agent& self,
                                                std::span<const Agent> visible,
                                                const SimilaritySpec& spec);

struct ViewCell {
  Cell cell;
  double distance;
  double deviation;  // signed, negative = clockwise of heading
};

/// Strict-weak order used for every deterministic choice over the cone:
/// distance, then |deviation|, then the clockwise side first.
bool view_order(const ViewCell& a, const ViewCell& b);

/// In-bounds cells within `radius` whose bearing deviates from the heading by
/// at most 50 degrees (boundary inclusive), self excluded, in view_order.
std::vector<ViewCell> field_of_desire(const Agent& self, const WorldGrid& grid,
                                      int radius);

std::optional<Cell> choose_target_cell(std::span<const ViewCell> view,
                                       const WorldGrid& grid);
std::optional<Cell> choose_target_cell(const Agent& self, const WorldGrid& grid,
                                       int radius);

/// Imitation step: when the comparison score falls below the trigger, the
/// visible free cell closest to the comparison agent replaces the goal target.
std::optional<Cell> sct_adjust(const Agent& self,
                               const std::optional<Comparison>& comparison,
                               std::optional<Cell> goal_target,
                               std::span<const ViewCell> view,
                               const WorldGrid& grid, const SimilaritySpec& spec);

}  // namespace arching
