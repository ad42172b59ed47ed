#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epsrel/error.hpp"

namespace epsrel {

struct TracePoint {
  double t_hours = 0.0;
  double v_volts = 0.0;
  double i_amps = 0.0;
  double p_watts = 0.0;
};

/// Time series from a battery or array run.  Rows ascend strictly in time
/// and P = V*I at every row.
struct Trace {
  std::vector<TracePoint> rows;
  std::string scenario;  // "healthy" or a fault descriptor
  bool charge_exhausted = false;  // battery runs only: trace was truncated
};

struct TraceComparison {
  std::optional<double> first_divergence_hours;
  double rms_dv_volts = 0.0;
  double rms_di_amps = 0.0;
};

/// Earliest instant where |dV| or |dI| exceeds 1e-6 plus RMS deltas over the
/// whole grid.  Both traces must share the same time grid exactly.
TraceComparison compare_traces(const Trace& healthy, const Trace& faulty);

/// CSV with header `t_hours,V_volts,I_amps,P_watts`.
void write_trace_csv(const Trace& trace, std::ostream& out);

}  // namespace epsrel
