#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "arching/render.hpp"

namespace arching {

std::string onset_plot_svg(int c, const std::vector<Point>& points,
                           const std::optional<RegressionFit>& fit) {
  constexpr double kW = 480, kH = 320, kLeft = 56, kRight = 16, kTop = 32, kBottom = 44;
  double xmin = 0, xmax = 14, ymin = 0, ymax = 10;
  for (const auto& [x, y] : points) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymax = std::max(ymax, y);
  }
  ymax = std::ceil(ymax * 1.1 / 10.0) * 10.0;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kW - kLeft - kRight); };
  auto py = [&](double y) { return kH - kBottom - (y - ymin) / (ymax - ymin) * (kH - kTop - kBottom); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      kW, kH);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kW, kH);
  out += fmt::format("<text x=\"{}\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
                     "Arch onset T vs exit width w, c={}</text>\n",
                     kW / 2, c);
  // Axes.
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n",
                     kLeft, kH - kBottom, kW - kRight);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
                     kLeft, kH - kBottom, kTop);
  for (double x = xmin; x <= xmax + 1e-9; x += 2) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(x),
                       kH - kBottom + 14, x);
  }
  for (int i = 0; i <= 5; ++i) {
    const double y = ymin + (ymax - ymin) * i / 5.0;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft - 6,
                       py(y) + 4, y);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">w (cells)</text>\n",
                     (kLeft + kW - kRight) / 2, kH - 8);
  out += fmt::format(
      "<text x=\"14\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {0})\">"
      "mean T (steps)</text>\n",
      (kTop + kH - kBottom) / 2);

  if (fit) {
    const double y0 = fit->intercept + fit->slope * xmin;
    const double y1 = fit->intercept + fit->slope * xmax;
    out += fmt::format(
        "<line class=\"fit\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f4fbf\" "
        "stroke-width=\"1.5\"/>\n",
        px(xmin), py(y0), px(xmax), py(y1));
    out += fmt::format(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">T = {:.2f} w + {:.2f}, R2 = {:.2f}</text>\n",
        kW - kRight, kTop + 10, fit->slope, fit->intercept, fit->r_squared);
  }
  for (const auto& [x, y] : points) {
    out += fmt::format(
        "<rect class=\"mean\" x=\"{}\" y=\"{}\" width=\"7\" height=\"7\" fill=\"#1f4fbf\"/>\n",
        px(x) - 3.5, py(y) - 3.5);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace arching
