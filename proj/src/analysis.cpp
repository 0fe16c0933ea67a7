#include "arching/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace arching {

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

const SweepCell* SweepTable::find(int c, int w) const {
  for (const auto& cell : cells) {
    if (cell.c == c && cell.w == w) return &cell;
  }
  return nullptr;
}

std::vector<int> SweepTable::crowd_sizes() const {
  std::set<int> cs;
  for (const auto& cell : cells) cs.insert(cell.c);
  return {cs.begin(), cs.end()};
}

SweepTable aggregate(std::span<const MeasurementRow> rows) {
  struct Acc {
    int W = 0;
    int replicates = 0;
    std::vector<double> T, M, m;
  };
  std::map<std::pair<int, int>, Acc> groups;
  std::optional<int> corridor;
  for (const auto& r : rows) {
    if (corridor && *corridor != r.W) {
      throw std::invalid_argument("aggregate: rows mix corridor widths " +
                                  std::to_string(*corridor) + " and " + std::to_string(r.W));
    }
    corridor = r.W;
    Acc& a = groups[{r.c, r.w}];
    a.W = r.W;
    ++a.replicates;
    if (!r.arch.detected) continue;
    a.T.push_back(r.arch.T);
    a.M.push_back(r.arch.M);
    a.m.push_back(r.arch.m);
  }
  SweepTable table;
  for (const auto& [key, a] : groups) {
    SweepCell cell;
    cell.c = key.first;
    cell.w = key.second;
    cell.W = a.W;
    cell.replicates = a.replicates;
    cell.detected = static_cast<int>(a.T.size());
    cell.T = summarize(a.T);
    cell.M = summarize(a.M);
    cell.m = summarize(a.m);
    table.cells.push_back(cell);
  }
  return table;
}

RegressionFit ols_fit(std::span<const Point> points) {
  if (points.size() < 2) throw DegenerateData("ols_fit needs at least two points");
  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw DegenerateData("ols_fit: all x values are equal");

  RegressionFit fit;
  fit.n = static_cast<int>(points.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : points) {
    const double e = y - (fit.intercept + fit.slope * x);
    sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
  if (fit.n >= 3) {
    fit.slope_se = std::sqrt(sse / (n - 2.0) / sxx);
    if (fit.slope_se > 0.0) {
      fit.t_stat = fit.slope / fit.slope_se;
    } else {
      fit.t_stat = fit.slope == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), fit.slope);
    }
  } else {
    fit.slope_se = std::numeric_limits<double>::quiet_NaN();
    fit.t_stat = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

double trend_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DegenerateData("trend_correlation: length mismatch");
  if (xs.size() < 3) throw DegenerateData("trend_correlation needs at least three points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateData("trend_correlation: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Two-sided critical values of Student's t, df = 1..30.
constexpr double kT05[30] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                             2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                             2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                             2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
constexpr double kT01[30] = {63.657, 9.925, 5.841, 4.604, 4.032, 3.707, 3.499, 3.355,
                             3.250,  3.169, 3.106, 3.055, 3.012, 2.977, 2.947, 2.921,
                             2.898,  2.878, 2.861, 2.845, 2.831, 2.819, 2.807, 2.797,
                             2.787,  2.779, 2.771, 2.763, 2.756, 2.750};

}  // namespace

double t_critical(int df, double alpha) {
  if (df < 1) throw std::invalid_argument("t_critical: df must be positive");
  const auto i = static_cast<std::size_t>(std::min(df, 30) - 1);
  if (alpha == 0.05) return kT05[i];
  if (alpha == 0.01) return kT01[i];
  throw std::invalid_argument("t_critical: alpha must be 0.05 or 0.01");
}

bool slope_significant(const RegressionFit& fit, double alpha) {
  if (fit.n < 3 || std::isnan(fit.t_stat)) return false;
  return std::abs(fit.t_stat) > t_critical(fit.n - 2, alpha);
}

std::vector<CrowdFit> regress_onset_on_width(const SweepTable& table,
                                             std::span<const MeasurementRow> rows,
                                             bool per_replicate) {
  std::vector<CrowdFit> out;
  for (int c : table.crowd_sizes()) {
    std::vector<Point> pts;
    if (per_replicate) {
      for (const auto& r : rows) {
        if (r.c == c && r.arch.detected) pts.emplace_back(r.w, r.arch.T);
      }
      std::sort(pts.begin(), pts.end());
    } else {
      for (const auto& cell : table.cells) {
        if (cell.c == c && !cell.empty()) pts.emplace_back(cell.w, cell.T.mean);
      }
    }
    CrowdFit cf;
    cf.c = c;
    try {
      cf.fit = ols_fit(pts);
    } catch (const DegenerateData&) {
      cf.fit.reset();
    }
    out.push_back(cf);
  }
  return out;
}

bool saturated(const SweepCell& cell) {
  return !cell.empty() && cell.m.mean >= static_cast<double>(cell.W) - 1.0;
}

TrendReport trend_report(const SweepTable& table, bool include_saturated) {
  TrendReport rep;
  std::vector<double> inv_cw, onset, c_over_w, depth, cw, width;
  for (const auto& cell : table.cells) {
    if (cell.empty()) continue;
    if (saturated(cell)) {
      ++rep.cells_saturated;
      if (!include_saturated) continue;
    }
    const double c = cell.c;
    const double w = cell.w;
    inv_cw.push_back(1.0 / (c * w));
    onset.push_back(cell.T.mean);
    c_over_w.push_back(c / w);
    depth.push_back(cell.M.mean);
    cw.push_back(c * w);
    width.push_back(cell.m.mean);
    ++rep.cells_used;
  }
  auto safe = [](std::span<const double> x, std::span<const double> y) -> std::optional<double> {
    try {
      return trend_correlation(x, y);
    } catch (const DegenerateData&) {
      return std::nullopt;
    }
  };
  rep.onset_vs_inverse_cw = safe(inv_cw, onset);
  rep.depth_vs_c_over_w = safe(c_over_w, depth);
  rep.width_vs_cw = safe(cw, width);
  return rep;
}

}  // namespace arching
