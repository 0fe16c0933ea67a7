#include "arching/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arching {

namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[static_cast<std::size_t>(a)] = b;  // keep the smaller root
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Labeling label_components(const std::vector<bool>& mask, int width, int length) {
  Labeling out;
  out.width = width;
  out.length = length;
  out.labels.assign(mask.size(), 0);
  auto idx = [width](int x, int y) {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  };

  DisjointSet sets;
  (void)sets.make();  // label 0 is background

  // First pass: provisional labels from the already-visited half of the
  // 8-neighbourhood (W, NW, N, NE in raster order).
  static constexpr int kBack[4][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  for (int y = 0; y < length; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!mask[idx(x, y)]) continue;
      int label = 0;
      for (const auto& d : kBack) {
        const int nx = x + d[0];
        const int ny = y + d[1];
        if (nx < 0 || nx >= width || ny < 0) continue;
        const int nl = out.labels[idx(nx, ny)];
        if (nl == 0) continue;
        if (label == 0) {
          label = nl;
        } else {
          sets.unite(label, nl);
        }
      }
      if (label == 0) label = sets.make();
      out.labels[idx(x, y)] = label;
    }
  }

  // Second pass: resolve to roots, renumber consecutively in raster order.
  std::vector<int> remap;
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    int& l = out.labels[i];
    if (l == 0) continue;
    const int root = sets.find(l);
    if (static_cast<std::size_t>(root) >= remap.size()) {
      remap.resize(static_cast<std::size_t>(root) + 1, 0);
    }
    if (remap[static_cast<std::size_t>(root)] == 0) {
      remap[static_cast<std::size_t>(root)] = ++out.count;
    }
    l = remap[static_cast<std::size_t>(root)];
  }
  return out;
}

std::vector<Cell> clog_cluster(const StepRecord& record, const WorldGrid& world,
                               double seed_distance) {
  const int W = world.width();
  const int L = world.length();
  std::vector<bool> mask(static_cast<std::size_t>(W) * static_cast<std::size_t>(L), false);
  std::vector<Cell> seeds;
  bool any = false;
  for (const auto& a : record.agents) {
    if (a.exited || a.moved || !world.in_bounds(a.pos)) continue;
    mask[static_cast<std::size_t>(a.pos.y) * static_cast<std::size_t>(W) +
         static_cast<std::size_t>(a.pos.x)] = true;
    any = true;
    if (distance(a.pos, world.nearest_exit(a.pos)) <= seed_distance + 1e-9) {
      seeds.push_back(a.pos);
    }
  }
  if (!any || seeds.empty()) return {};

  const Labeling lab = label_components(mask, W, L);
  std::vector<int> sizes(static_cast<std::size_t>(lab.count) + 1, 0);
  for (int l : lab.labels) ++sizes[static_cast<std::size_t>(l)];

  int best = 0;
  for (const Cell& s : seeds) {
    const int l = lab.at(s);
    if (best == 0 || sizes[static_cast<std::size_t>(l)] > sizes[static_cast<std::size_t>(best)] ||
        (sizes[static_cast<std::size_t>(l)] == sizes[static_cast<std::size_t>(best)] && l < best)) {
      best = l;
    }
  }

  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(sizes[static_cast<std::size_t>(best)]));
  for (const auto& a : record.agents) {
    if (a.exited || a.moved || !world.in_bounds(a.pos)) continue;
    if (lab.at(a.pos) == best) out.push_back(a.pos);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ArchAxes measure_axes(const std::vector<Cell>& cluster, const WorldGrid& world) {
  if (cluster.empty()) throw std::invalid_argument("measure_axes: empty cluster");
  // The arch's minor axis lies on the exit, so its base always spans the
  // exit segment.
  int max_y = cluster.front().y;
  int min_x = world.exit_cells().front().x;
  int max_x = world.exit_cells().back().x;
  for (const Cell& c : cluster) {
    max_y = std::max(max_y, c.y);
    min_x = std::min(min_x, c.x);
    max_x = std::max(max_x, c.x);
  }
  ArchAxes axes;
  axes.M = max_y - world.exit_cells().front().y;
  axes.m = max_x - min_x + 1;
  return axes;
}

ArchMeasurement detect_arch_onset(const Trace& trace, const WorldGrid& world,
                                  const ArchParams& params) {
  ArchMeasurement result;
  const double need = params.threshold_factor * world.exit_width();
  const auto persist = static_cast<std::size_t>(std::max(params.persistence, 0));

  // Cluster sizes are cached since each candidate inspects the next steps.
  std::vector<int> sizes(trace.size(), -1);
  auto cluster_size = [&](std::size_t i) {
    if (sizes[i] < 0) {
      sizes[i] = static_cast<int>(clog_cluster(trace[i], world, params.seed_distance).size());
    }
    return sizes[i];
  };

  for (std::size_t i = 0; i + persist < trace.size(); ++i) {
    if (static_cast<double>(cluster_size(i)) < need) continue;
    bool holds = true;
    for (std::size_t k = 1; k <= persist && holds; ++k) holds = cluster_size(i + k) > 0;
    if (!holds) continue;

    const auto cluster = clog_cluster(trace[i], world, params.seed_distance);
    const ArchAxes axes = measure_axes(cluster, world);
    result.detected = true;
    result.T = trace[i].t;
    result.M = axes.M;
    result.m = axes.m;
    result.cluster_size = static_cast<int>(cluster.size());
    result.exited_at_onset = trace[i].exited_count();
    return result;
  }
  return result;
}

std::vector<Cell> frontier_cells(const std::vector<Cell>& cluster,
                                 const StepRecord& record, const WorldGrid& world) {
  std::vector<bool> occupied(
      static_cast<std::size_t>(world.width()) * static_cast<std::size_t>(world.length()), false);
  for (const auto& a : record.agents) {
    if (a.exited || !world.in_bounds(a.pos)) continue;
    occupied[static_cast<std::size_t>(a.pos.y) * static_cast<std::size_t>(world.width()) +
             static_cast<std::size_t>(a.pos.x)] = true;
  }
  std::vector<Cell> out;
  for (const Cell& c : cluster) {
    for (int dx = -1; dx <= 1; ++dx) {
      const Cell n{c.x + dx, c.y + 1};
      if (world.is_wall(n)) continue;
      if (!occupied[static_cast<std::size_t>(n.y) * static_cast<std::size_t>(world.width()) +
                    static_cast<std::size_t>(n.x)]) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

double ellipse_fit_residual(const std::vector<Cell>& frontier, int M, int m,
                            double center_x) {
  if (frontier.empty()) return 0.0;
  const double a = 0.5 * static_cast<double>(m);
  const double b = static_cast<double>(M);
  double sum = 0.0;
  for (const Cell& c : frontier) {
    const double u = (static_cast<double>(c.x) - center_x) / a;
    const double v = static_cast<double>(c.y) / b;
    const double r = u * u + v * v - 1.0;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(frontier.size()));
}

}  // namespace arching
