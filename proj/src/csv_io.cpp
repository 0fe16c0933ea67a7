#include "arching/csv_io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace arching {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

class Reader {
 public:
  Reader(std::istream& in, const char* header, const char* what) : in_(in), what_(what) {
    std::string line;
    if (!next_line(line)) throw CsvError(std::string(what) + ": empty input");
    if (line != header) {
      throw CsvError(fmt::format("{}: row 1: header mismatch, expected '{}'", what, header));
    }
    columns_ = split(header);
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (next_line(line)) {
      if (line.empty()) continue;
      fields = split(line);
      if (fields.size() != columns_.size()) {
        throw CsvError(fmt::format("{}: row {}: expected {} columns, found {}", what_, row_,
                                   columns_.size(), fields.size()));
      }
      return true;
    }
    return false;
  }

  template <typename T>
  T get(const std::vector<std::string>& fields, std::size_t col) const {
    const std::string& s = fields[col];
    T out{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw CsvError(fmt::format("{}: row {}, column '{}': invalid value '{}'", what_, row_,
                                 columns_[col], s));
    }
    return out;
  }

  int row() const { return row_; }

  bool is_na(const std::vector<std::string>& fields, std::size_t col) const {
    return fields[col] == "NA";
  }

 private:
  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++row_;
    return true;
  }

  std::istream& in_;
  const char* what_;
  std::vector<std::string> columns_;
  int row_ = 0;
};

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& rec : trace) {
    for (const auto& a : rec.agents) {
      fmt::print(out, "{},{},{},{},{}\n", rec.t, a.id, a.pos.x, a.pos.y, a.exited ? 1 : 0);
    }
  }
}

void write_summary_csv(std::ostream& out, const Trace& trace) {
  out << kSummaryHeader << '\n';
  for (const auto& rec : trace) {
    fmt::print(out, "{},{},{}\n", rec.t, rec.exits_this_step, rec.stationary_count());
  }
}

void write_measurement_csv(std::ostream& out, std::span<const MeasurementRow> rows) {
  out << kMeasurementHeader << '\n';
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},", r.c, r.w, r.W, r.seed, r.replicate,
               r.arch.detected ? 1 : 0);
    if (r.arch.detected) {
      fmt::print(out, "{},{},{},{}\n", r.arch.T, r.arch.M, r.arch.m, r.arch.cluster_size);
    } else {
      out << "NA,NA,NA,NA\n";
    }
  }
}

void write_errors_csv(std::ostream& out, std::span<const SweepOutcome> outcomes) {
  out << kErrorsHeader << '\n';
  for (const auto& o : outcomes) {
    if (o.ok()) continue;
    std::string msg = o.error;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    fmt::print(out, "{},{},{},{},{},{}\n", o.row.c, o.row.w, o.row.W, o.row.seed,
               o.row.replicate, msg);
  }
}

void write_sweep_table_csv(std::ostream& out, const SweepTable& table) {
  out << kSweepTableHeader << '\n';
  for (const auto& c : table.cells) {
    fmt::print(out, "{},{},{},{},{},", c.c, c.w, c.W, c.replicates, c.detected);
    if (c.empty()) {
      out << "NA,NA,NA,NA,NA,NA\n";
    } else {
      fmt::print(out, "{},{},{},{},{},{}\n", num(c.T.mean), num(c.T.sd), num(c.M.mean),
                 num(c.M.sd), num(c.m.mean), num(c.m.sd));
    }
  }
}

void write_regression_csv(std::ostream& out, std::span<const CrowdFit> fits) {
  out << kRegressionHeader << '\n';
  for (const auto& cf : fits) {
    if (!cf.fit) {
      fmt::print(out, "{},NA,NA,NA,NA,NA,NA,NA\n", cf.c);
      continue;
    }
    const auto& f = *cf.fit;
    fmt::print(out, "{},{},{},{},{},{},{},{}\n", cf.c, f.n, num(f.slope), num(f.intercept),
               num(f.r_squared), num(f.slope_se), num(f.t_stat),
               slope_significant(f, 0.01) ? 1 : 0);
  }
}

void write_trends_csv(std::ostream& out, const TrendReport& r, bool include_saturated) {
  out << kTrendsHeader << '\n';
  const int inc = include_saturated ? 1 : 0;
  fmt::print(out, "T_vs_inverse_cw,{},{},{},{}\n", opt(r.onset_vs_inverse_cw), r.cells_used,
             r.cells_saturated, inc);
  fmt::print(out, "M_vs_c_over_w,{},{},{},{}\n", opt(r.depth_vs_c_over_w), r.cells_used,
             r.cells_saturated, inc);
  fmt::print(out, "m_vs_cw,{},{},{},{}\n", opt(r.width_vs_cw), r.cells_used, r.cells_saturated,
             inc);
}

Trace read_trace_csv(std::istream& in) {
  Reader reader(in, kTraceHeader, "trace");
  Trace trace;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const int t = reader.get<int>(f, 0);
    AgentState a{reader.get<int>(f, 1), {reader.get<int>(f, 2), reader.get<int>(f, 3)},
                 reader.get<int>(f, 4) != 0, false};
    if (trace.empty() || trace.back().t != t) {
      if (!trace.empty() && t < trace.back().t) {
        throw CsvError(fmt::format("trace: step {} appears after step {}", t, trace.back().t));
      }
      trace.push_back({});
      trace.back().t = t;
    }
    if (a.id != static_cast<int>(trace.back().agents.size())) {
      throw CsvError(fmt::format("trace: row {}: expected id {} at step {}", reader.row(),
                                 trace.back().agents.size(), t));
    }
    trace.back().agents.push_back(a);
  }
  // moved and exits_this_step are implied by consecutive steps.
  for (std::size_t i = 1; i < trace.size(); ++i) {
    auto& prev = trace[i - 1];
    auto& cur = trace[i];
    if (cur.agents.size() != prev.agents.size()) {
      throw CsvError(fmt::format("trace: step {} has {} agents, step {} has {}", cur.t,
                                 cur.agents.size(), prev.t, prev.agents.size()));
    }
    for (std::size_t k = 0; k < cur.agents.size(); ++k) {
      cur.agents[k].moved = cur.agents[k].pos != prev.agents[k].pos;
    }
    cur.exits_this_step = cur.exited_count() - prev.exited_count();
  }
  return trace;
}

std::vector<MeasurementRow> read_measurement_csv(std::istream& in) {
  Reader reader(in, kMeasurementHeader, "measurements");
  std::vector<MeasurementRow> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    MeasurementRow r;
    r.c = reader.get<int>(f, 0);
    r.w = reader.get<int>(f, 1);
    r.W = reader.get<int>(f, 2);
    r.seed = reader.get<std::uint64_t>(f, 3);
    r.replicate = reader.get<int>(f, 4);
    r.arch.detected = reader.get<int>(f, 5) != 0;
    if (r.arch.detected) {
      r.arch.T = reader.get<int>(f, 6);
      r.arch.M = reader.get<int>(f, 7);
      r.arch.m = reader.get<int>(f, 8);
      r.arch.cluster_size = reader.get<int>(f, 9);
    }
    rows.push_back(r);
  }
  return rows;
}

void canonical_sort(std::vector<MeasurementRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const MeasurementRow& a, const MeasurementRow& b) {
    return std::tie(a.c, a.w, a.replicate, a.seed) < std::tie(b.c, b.w, b.replicate, b.seed);
  });
}

}  // namespace arching
