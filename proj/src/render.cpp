#include "arching/render.hpp"

#include <fmt/format.h>

namespace arching {

namespace {

std::vector<std::string> blank_frame(const WorldGrid& world) {
  std::vector<std::string> rows(static_cast<std::size_t>(world.length()),
                                std::string(static_cast<std::size_t>(world.width()), '.'));
  for (int x = 0; x < world.width(); ++x) {
    rows[0][static_cast<std::size_t>(x)] = world.is_exit({x, 0}) ? 'E' : '#';
  }
  return rows;
}

}  // namespace

std::string render_ascii(const WorldGrid& world, const StepRecord& record) {
  auto rows = blank_frame(world);
  for (const auto& a : record.agents) {
    if (a.exited || !world.in_bounds(a.pos)) continue;
    rows[static_cast<std::size_t>(a.pos.y)][static_cast<std::size_t>(a.pos.x)] = 'o';
  }
  std::string out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out += *it;
    out += '\n';
  }
  return out;
}

std::string render_svg(const WorldGrid& world, const StepRecord& record) {
  constexpr int kCell = 12;
  const int width = world.width() * kCell;
  const int height = world.length() * kCell;
  // SVG y grows downward; flip so the exit wall is at the bottom.
  auto top = [&](int y) { return (world.length() - 1 - y) * kCell; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      width, height, width, height);
  out += fmt::format("<title>t={}</title>\n", record.t);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#f4f4f4\"/>\n",
                     width, height);
  for (int x = 0; x < world.width(); ++x) {
    const bool exit = world.is_exit({x, 0});
    out += fmt::format(
        "<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
        exit ? "exit" : "wall", x * kCell, top(0), kCell, kCell, exit ? "#2ca02c" : "#333333");
  }
  for (const auto& a : record.agents) {
    if (a.exited || !world.in_bounds(a.pos)) continue;
    out += fmt::format(
        "<circle class=\"agent\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1f77b4\"/>\n",
        a.pos.x * kCell + kCell / 2, top(a.pos.y) + kCell / 2, kCell / 2 - 1);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace arching
