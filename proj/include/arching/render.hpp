#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arching/analysis.hpp"
#include "arching/engine.hpp"
#include "arching/world.hpp"

namespace arching {

/// One character per cell, far end of the corridor on top and the exit wall
/// on the bottom line: '#' wall, 'E' exit, 'o' agent, '.' free floor.
std::string render_ascii(const WorldGrid& world, const StepRecord& record);

/// One square per cell; exit cells are highlighted and agents drawn on top.
std::string render_svg(const WorldGrid& world, const StepRecord& record);

/// Scatter of mean onset time against exit width for one crowd size, with the
/// fitted regression line when available.
std::string onset_plot_svg(int c, const std::vector<Point>& points,
                           const std::optional<RegressionFit>& fit);

}  // namespace arching
