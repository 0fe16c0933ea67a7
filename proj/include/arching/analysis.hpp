#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arching/metrics.hpp"

namespace arching {

/// One row of the measurement CSV: a single run of a sweep cell.
struct MeasurementRow {
  int c = 0;
  int w = 0;
  int W = 0;
  std::uint64_t seed = 0;
  int replicate = 0;
  ArchMeasurement arch;

  friend bool operator==(const MeasurementRow&, const MeasurementRow&) = default;
};

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

Summary summarize(std::span<const double> values);

struct SweepCell {
  int c = 0;
  int w = 0;
  int W = 0;
  int replicates = 0;
  int detected = 0;
  Summary T;
  Summary M;
  Summary m;

  bool empty() const { return detected == 0; }
};

/// Cells ordered by (c, w); statistics cover detected arches only.
struct SweepTable {
  std::vector<SweepCell> cells;

  const SweepCell* find(int c, int w) const;
  std::vector<int> crowd_sizes() const;
};

/// Groups rows by (c, w). Throws std::invalid_argument when rows disagree on W.
SweepTable aggregate(std::span<const MeasurementRow> rows);

class DegenerateData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_se = 0.0;  // NaN when n < 3
  double t_stat = 0.0;    // NaN when n < 3
  int n = 0;
};

using Point = std::pair<double, double>;

/// Simple least squares. R^2 is defined as 0 when y is constant. Throws
/// DegenerateData when n < 2 or every x is equal.
RegressionFit ols_fit(std::span<const Point> points);

/// Pearson correlation. Throws DegenerateData on fewer than 3 points,
/// mismatched lengths or zero variance in either series.
double trend_correlation(std::span<const double> xs, std::span<const double> ys);

/// Two-sided Student t critical value for alpha in {0.05, 0.01}. Degrees of
/// freedom above 30 use the df = 30 entry.
double t_critical(int df, double alpha);

/// True when |t| exceeds the two-sided critical value at alpha.
bool slope_significant(const RegressionFit& fit, double alpha);

struct CrowdFit {
  int c = 0;
  std::optional<RegressionFit> fit;  // empty when fewer than two usable w levels
};

/// Fits T on w for every crowd size. By default each non-empty cell
/// contributes its mean T; `per_replicate` fits every detected run instead.
std::vector<CrowdFit> regress_onset_on_width(const SweepTable& table,
                                             std::span<const MeasurementRow> rows,
                                             bool per_replicate = false);

struct TrendReport {
  std::optional<double> onset_vs_inverse_cw;  // r(mean T, 1 / (c w))
  std::optional<double> depth_vs_c_over_w;    // r(mean M, c / w)
  std::optional<double> width_vs_cw;          // r(mean m, c w)
  int cells_used = 0;
  int cells_saturated = 0;
};

/// A cell is saturated when its mean m has reached within one cell of the
/// corridor width.
bool saturated(const SweepCell& cell);

TrendReport trend_report(const SweepTable& table, bool include_saturated = false);

}  // namespace arching
