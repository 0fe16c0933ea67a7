// Acceptance gate. Usage: acceptance [criterion ...]; no arguments runs 1..8.
// Prints one PASS/FAIL line per criterion and exits nonzero if any failed.

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "arching/analysis.hpp"
#include "arching/config.hpp"
#include "arching/csv_io.hpp"
#include "arching/metrics.hpp"
#include "arching/sweep.hpp"
#include "oracles.hpp"

using namespace arching;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct DefaultSweep {
  std::vector<MeasurementRow> rows;
  SweepTable table;
  double seconds = 0.0;
  int failures = 0;
};

const DefaultSweep& default_sweep() {
  static std::optional<DefaultSweep> cache;
  if (!cache) {
    DefaultSweep s;
    const SweepConfig cfg;
    const auto start = Clock::now();
    const auto outcomes = run_sweep_parallel(cfg, worker_count());
    s.seconds = seconds_since(start);
    for (const auto& o : outcomes) {
      if (o.ok()) {
        s.rows.push_back(o.row);
      } else {
        ++s.failures;
      }
    }
    s.table = aggregate(s.rows);
    cache = std::move(s);
  }
  return *cache;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt::format("{:.3f}", *v) : std::string("undefined");
}

// 1. Arching emerges in the reference scenario.
Verdict arching_emergence() {
  const SweepConfig sweep;
  int ok = 0;
  std::string detail;
  for (int rep = 0; rep < sweep.replicates; ++rep) {
    SimConfig cfg = sweep.engine;
    cfg.c = 400;
    cfg.w = 7;
    cfg.W = 19;
    cfg.seed = derive_seed(sweep.base_seed, cfg.c, cfg.w, rep);
    const auto start = Clock::now();
    const Trace trace = run(cfg);
    const auto arch = detect_arch_onset(trace, build_world(cfg.W, cfg.L, cfg.w), arch_params(cfg));
    const double secs = seconds_since(start);
    const bool good = arch.detected && arch.M >= 2 && arch.m >= cfg.w && arch.m <= 19 &&
                      2 * arch.exited_at_onset < cfg.c && secs < 30.0;
    ok += good ? 1 : 0;
    if (arch.detected) {
      detail += fmt::format("[rep {}: T={} M={} m={} exited={} {:.2f}s] ", rep, arch.T, arch.M,
                            arch.m, arch.exited_at_onset, secs);
    } else {
      detail += fmt::format("[rep {}: no arch, {:.2f}s] ", rep, secs);
    }
  }
  return {ok >= 2, fmt::format("{}/3 runs qualify {}", ok, detail)};
}

// 2. Onset time falls with exit width, more steeply for larger crowds.
Verdict onset_width_relation() {
  const auto& s = default_sweep();
  const auto fits = regress_onset_on_width(s.table, s.rows);
  std::map<int, std::optional<RegressionFit>> by_c;
  std::string detail;
  for (const auto& f : fits) {
    by_c[f.c] = f.fit;
    detail += f.fit ? fmt::format("c={} slope={:.3f} ", f.c, f.fit->slope)
                    : fmt::format("c={} no fit ", f.c);
  }
  const auto s450 = by_c[450], s400 = by_c[400], s200 = by_c[200];
  if (!s450 || !s400 || !s200) return {false, detail + "(missing fit)"};
  const bool pass = s450->slope < 0 && s400->slope < 0 &&
                    std::abs(s450->slope) > std::abs(s200->slope);
  return {pass, detail};
}

// 3. Arch width plateaus at the corridor width and grows past it when the
// corridor widens.
Verdict plateau() {
  const auto& s = default_sweep();
  bool pass = true;
  std::string detail;
  for (int w : {9, 11, 13}) {
    const SweepCell* cell = s.table.find(450, w);
    if (cell == nullptr || cell->empty()) {
      pass = false;
      detail += fmt::format("W=19 w={}: no arch detected; ", w);
      continue;
    }
    const bool near = std::abs(cell->m.mean - 19.0) <= 1.0;
    pass = pass && near;
    detail += fmt::format("W=19 w={}: mean m={:.2f} ({}/{}); ", w, cell->m.mean, cell->detected,
                          cell->replicates);
  }

  SweepConfig wide;
  wide.W = 35;
  wide.engine.W = 35;
  wide.c_levels = {450};
  wide.w_levels = {13};
  std::vector<double> ms;
  for (const auto& o : run_sweep_parallel(wide, worker_count())) {
    if (o.ok() && o.row.arch.detected) ms.push_back(o.row.arch.m);
  }
  if (ms.empty()) {
    pass = false;
    detail += "W=35 w=13: no arch detected";
  } else {
    const double mean = summarize(ms).mean;
    pass = pass && mean > 19.0;
    detail += fmt::format("W=35 w=13: mean m={:.2f} ({}/3)", mean, ms.size());
  }
  return {pass, detail};
}

// 4. Trend correlations over non-saturated cells.
Verdict trend_correlations() {
  const auto& s = default_sweep();
  const TrendReport rep = trend_report(s.table, false);
  auto above = [](const std::optional<double>& r) { return r && *r > 0.5; };
  const bool pass = above(rep.onset_vs_inverse_cw) && above(rep.depth_vs_c_over_w) &&
                    above(rep.width_vs_cw);
  return {pass, fmt::format("r(T,1/cw)={} r(M,c/w)={} r(m,cw)={} cells={} saturated={}",
                            fmt_opt(rep.onset_vs_inverse_cw), fmt_opt(rep.depth_vs_c_over_w),
                            fmt_opt(rep.width_vs_cw), rep.cells_used, rep.cells_saturated)};
}

// 5. Least squares against closed-form examples and a search oracle.
Verdict statistical_kernel() {
  bool pass = true;
  std::string detail;
  auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

  const std::vector<Point> ex1{{1, 2}, {2, 4}, {3, 6}};
  const std::vector<Point> ex2{{0, 1}, {1, 1}, {2, 1}};
  const std::vector<Point> ex3{{0, 0}, {1, 1}, {2, 0}};
  const auto f1 = ols_fit(ex1), f2 = ols_fit(ex2), f3 = ols_fit(ex3);
  const bool examples = close(f1.slope, 2, 1e-9) && close(f1.intercept, 0, 1e-9) &&
                        close(f1.r_squared, 1, 1e-9) && close(f2.slope, 0, 1e-9) &&
                        close(f2.intercept, 1, 1e-9) && close(f2.r_squared, 0, 1e-9) &&
                        close(f3.slope, 0, 1e-9) && close(f3.intercept, 1.0 / 3.0, 1e-9) &&
                        close(f3.r_squared, 0, 1e-9);
  pass = pass && examples;
  detail += examples ? "examples ok; " : "examples FAILED; ";

  std::mt19937 gen(20240611);
  std::uniform_real_distribution<double> xs(0.0, 14.0), coef(-5.0, 5.0);
  std::normal_distribution<double> noise(0.0, 4.0);
  double worst_fit = 0.0, worst_r2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 8;
    const double b = coef(gen), a = 10 * coef(gen);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
      const double x = xs(gen);
      pts.emplace_back(x, a + b * x + noise(gen));
    }
    const auto f = ols_fit(pts);
    const auto [ob, oa] = oracle::grid_search_fit(pts);
    worst_fit = std::max({worst_fit, std::abs(f.slope - ob), std::abs(f.intercept - oa)});
    std::vector<double> x, y;
    for (const auto& [px, py] : pts) {
      x.push_back(px);
      y.push_back(py);
    }
    const double r = oracle::pearson(x, y);
    worst_r2 = std::max(worst_r2, std::abs(f.r_squared - r * r));
  }
  pass = pass && worst_fit <= 1e-6 && worst_r2 <= 1e-12;
  detail += fmt::format("max |coef - oracle|={:.2e}, max |R2 - r^2|={:.2e}", worst_fit, worst_r2);
  return {pass, detail};
}

std::string trace_csv(const SimConfig& cfg) {
  std::ostringstream out;
  write_trace_csv(out, run(cfg));
  return out.str();
}

std::string measurement_csv(std::vector<SweepOutcome> outcomes) {
  std::vector<MeasurementRow> rows;
  for (const auto& o : outcomes) rows.push_back(o.row);
  canonical_sort(rows);
  std::ostringstream out;
  write_measurement_csv(out, rows);
  return out.str();
}

// 6. Byte-identical reruns and parallelism-independent sweeps.
Verdict determinism() {
  bool traces_equal = true;
  for (const auto& [c, w, seed] :
       std::vector<std::tuple<int, int, std::uint64_t>>{{400, 7, 1}, {200, 1, 2}, {450, 13, 3}}) {
    SimConfig cfg;
    cfg.c = c;
    cfg.w = w;
    cfg.seed = seed;
    traces_equal = traces_equal && trace_csv(cfg) == trace_csv(cfg);
  }
  const SweepConfig sweep;
  const std::string serial = measurement_csv(run_sweep_serial(sweep));
  const std::string par = measurement_csv(run_sweep_parallel(sweep, 8));
  const bool sweeps_equal = serial == par;
  return {traces_equal && sweeps_equal,
          fmt::format("traces {}, sweep serial vs 8 threads {}",
                      traces_equal ? "identical" : "DIFFER", sweeps_equal ? "identical" : "DIFFER")};
}

// 7. Geometry kernels against exhaustive oracles.
Verdict geometry_oracles() {
  // Cone: agent in the middle of an 11x11 neighbourhood.
  const auto big = build_world(41, 80, 7);
  const Cell self{20, 40};
  std::vector<double> headings;
  for (int k = 0; k < 8; ++k) headings.push_back(k * oracle::kPi / 4);
  for (int dy = -5; dy <= 5; ++dy) {
    for (int dx = -5; dx <= 5; ++dx) {
      if (dx != 0 || dy != 0) headings.push_back(direction(self, {self.x + dx, self.y + dy}));
    }
  }
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> angle(0.0, 2 * oracle::kPi);
  for (int k = 0; k < 200; ++k) headings.push_back(angle(gen));
  long cone_cases = 0, cone_bad = 0;
  for (int radius = 1; radius <= 5; ++radius) {
    for (double h : headings) {
      Agent a;
      a.pos = self;
      a.heading = h;
      std::set<Cell> got;
      for (const auto& v : field_of_desire(a, big, radius)) got.insert(v.cell);
      for (int dy = -5; dy <= 5; ++dy) {
        for (int dx = -5; dx <= 5; ++dx) {
          const Cell c{self.x + dx, self.y + dy};
          ++cone_cases;
          if (got.count(c) != (oracle::in_cone(self, h, c, radius) ? 1u : 0u)) ++cone_bad;
        }
      }
    }
  }

  // Clustering: random layouts of up to 30 agents in front of the exit.
  long cluster_cases = 0, cluster_bad = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int w = 1 + static_cast<int>(gen() % 19);
    const auto g = build_world(19, 60, w);
    const int n = 1 + static_cast<int>(gen() % 30);
    std::set<Cell> used;
    StepRecord r;
    while (static_cast<int>(r.agents.size()) < n) {
      const Cell c{4 + static_cast<int>(gen() % 11), 1 + static_cast<int>(gen() % 11)};
      if (!used.insert(c).second) continue;
      r.agents.push_back({static_cast<int>(r.agents.size()), c, gen() % 10 == 0, gen() % 4 == 0});
    }
    ++cluster_cases;
    if (clog_cluster(r, g) != oracle::clog_cluster(r, g.exit_cells(), kDefaultSeedDistance)) {
      ++cluster_bad;
    }
  }

  // Nearest exit: every cell of the 11x11 block in front of the exit wall,
  // for every exit width.
  long exit_cases = 0, exit_bad = 0;
  for (int w = 1; w <= 19; ++w) {
    const auto g = build_world(19, 60, w);
    for (int y = 0; y <= 10; ++y) {
      for (int x = 4; x <= 14; ++x) {
        ++exit_cases;
        if (g.nearest_exit({x, y}) != oracle::nearest_exit(g.exit_begin(), w, {x, y})) ++exit_bad;
      }
    }
  }
  return {cone_bad == 0 && cluster_bad == 0 && exit_bad == 0,
          fmt::format("cone {}/{} mismatches, clusters {}/{}, nearest exit {}/{}", cone_bad,
                      cone_cases, cluster_bad, cluster_cases, exit_bad, exit_cases)};
}

// 8. The full default sweep runs at desk scale.
Verdict desk_runtime() {
  const auto& s = default_sweep();
  return {s.seconds < 600.0 && s.failures == 0,
          fmt::format("105 runs in {:.1f} s on {} thread(s), {} failed", s.seconds,
                      worker_count(), s.failures)};
}

struct Criterion {
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"arching emergence (c=400, w=7)", arching_emergence},
      {"onset time vs exit width", onset_width_relation},
      {"arch width plateau", plateau},
      {"trend correlations", trend_correlations},
      {"least-squares kernel", statistical_kernel},
      {"determinism", determinism},
      {"geometry oracles", geometry_oracles},
      {"desk-scale runtime", desk_runtime},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);
  }

  int failed = 0;
  for (int k : selected) {
    const auto& c = criteria[static_cast<std::size_t>(k - 1)];
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    fmt::print("criterion {}: {}  {}  ({})\n", k, v.pass ? "PASS" : "FAIL", c.name, v.detail);
  }
  return failed == 0 ? 0 : 1;
}
