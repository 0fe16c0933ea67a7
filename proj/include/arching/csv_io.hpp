#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arching/analysis.hpp"
#include "arching/engine.hpp"
#include "arching/sweep.hpp"

namespace arching {

// Fixed CSV headers (schema version kSchemaVersion).
inline constexpr const char* kTraceHeader = "t,id,x,y,exited";
inline constexpr const char* kSummaryHeader = "t,exits_this_step,stationary_count";
inline constexpr const char* kMeasurementHeader =
    "c,w,W,seed,replicate,arch_detected,T,M,m,cluster_size";
inline constexpr const char* kSweepTableHeader =
    "c,w,W,replicates,detected,T_mean,T_sd,M_mean,M_sd,m_mean,m_sd";
inline constexpr const char* kRegressionHeader =
    "c,n,slope,intercept,r_squared,slope_se,t_stat,significant_001";
inline constexpr const char* kTrendsHeader =
    "relation,pearson_r,cells_used,cells_saturated,include_saturated";
inline constexpr const char* kErrorsHeader = "c,w,W,seed,replicate,error";

/// Malformed CSV input; the message names the row and column.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_summary_csv(std::ostream& out, const Trace& trace);
void write_measurement_csv(std::ostream& out, std::span<const MeasurementRow> rows);
void write_errors_csv(std::ostream& out, std::span<const SweepOutcome> outcomes);
void write_sweep_table_csv(std::ostream& out, const SweepTable& table);
void write_regression_csv(std::ostream& out, std::span<const CrowdFit> fits);
void write_trends_csv(std::ostream& out, const TrendReport& report, bool include_saturated);

/// `moved` and `exits_this_step` are not stored; they are rebuilt from
/// consecutive steps, so measurements on a read-back trace match the original.
Trace read_trace_csv(std::istream& in);
std::vector<MeasurementRow> read_measurement_csv(std::istream& in);

/// Sorts rows by (c, w, replicate, seed).
void canonical_sort(std::vector<MeasurementRow>& rows);

}  // namespace arching
