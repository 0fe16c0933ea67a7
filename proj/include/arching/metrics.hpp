#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "arching/engine.hpp"
#include "arching/world.hpp"

namespace arching {

/// Connected-component labels over a W x L occupancy mask, 8-connectivity.
/// Background cells get label 0; components are numbered 1..n in raster
/// order of their first cell (y-major, then x).
struct Labeling {
  int width = 0;
  int length = 0;
  int count = 0;
  std::vector<int> labels;

  int at(Cell c) const {
    return labels[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(c.x)];
  }
};

/// Two-pass union-find labelling.
Labeling label_components(const std::vector<bool>& mask, int width, int length);

inline constexpr double kDefaultSeedDistance = 2.0;

/// Largest 8-connected group of stationary, non-exited agents that contains
/// an agent within `seed_distance` of an exit cell. Agents directly in front
/// of the exit step onto it and leave within the same step, so they are never
/// stationary; the default reach of 2 cells anchors the cluster one row back.
/// Ties between equally large groups go to the one whose first cell comes
/// first in raster order. Returned cells are sorted.
std::vector<Cell> clog_cluster(const StepRecord& record, const WorldGrid& world,
                               double seed_distance = kDefaultSeedDistance);

struct ArchAxes {
  int M = 0;  // depth along the corridor, measured from the exit wall
  int m = 0;  // width along the exit wall
};

/// M is the deepest cluster row measured from the exit wall; m is the
/// transverse extent of the cluster together with the exit segment. Throws
/// std::invalid_argument on an empty cluster.
ArchAxes measure_axes(const std::vector<Cell>& cluster, const WorldGrid& world);

struct ArchParams {
  double threshold_factor = 3.0;
  int persistence = 3;
  double seed_distance = kDefaultSeedDistance;
};

struct ArchMeasurement {
  bool detected = false;
  int T = 0;
  int M = 0;
  int m = 0;
  int cluster_size = 0;
  int exited_at_onset = 0;

  friend bool operator==(const ArchMeasurement&, const ArchMeasurement&) = default;
};

/// T is the first step whose clog cluster holds at least threshold_factor * w
/// agents and stays nonempty for the following `persistence` steps.
ArchMeasurement detect_arch_onset(const Trace& trace, const WorldGrid& world,
                                  const ArchParams& params = {});

/// Cluster cells with at least one free in-bounds 8-neighbour on the
/// upstream (larger y) side.
std::vector<Cell> frontier_cells(const std::vector<Cell>& cluster,
                                 const StepRecord& record, const WorldGrid& world);

/// RMS of |(dx / (m/2))^2 + (y / M)^2 - 1| over the frontier, with dx taken
/// from `center_x`.
double ellipse_fit_residual(const std::vector<Cell>& frontier, int M, int m,
                            double center_x);

}  // namespace arching
