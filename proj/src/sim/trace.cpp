#include "epsrel/sim/trace.hpp"

#include <cmath>
#include <ostream>

namespace epsrel {

TraceComparison compare_traces(const Trace& healthy, const Trace& faulty) {
  if (healthy.rows.size() != faulty.rows.size()) {
    throw Error(ErrorCode::GridMismatch,
                "traces have different lengths (" +
                    std::to_string(healthy.rows.size()) + " vs " +
                    std::to_string(faulty.rows.size()) + ")");
  }
  constexpr double kDivergence = 1e-6;
  TraceComparison cmp;
  double sum_dv2 = 0.0;
  double sum_di2 = 0.0;
  for (std::size_t i = 0; i < healthy.rows.size(); ++i) {
    const TracePoint& h = healthy.rows[i];
    const TracePoint& f = faulty.rows[i];
    if (h.t_hours != f.t_hours) {
      throw Error(ErrorCode::GridMismatch,
                  "time grids differ at row " + std::to_string(i));
    }
    const double dv = f.v_volts - h.v_volts;
    const double di = f.i_amps - h.i_amps;
    sum_dv2 += dv * dv;
    sum_di2 += di * di;
    if (!cmp.first_divergence_hours &&
        (std::abs(dv) > kDivergence || std::abs(di) > kDivergence)) {
      cmp.first_divergence_hours = h.t_hours;
    }
  }
  if (!healthy.rows.empty()) {
    const double n = static_cast<double>(healthy.rows.size());
    cmp.rms_dv_volts = std::sqrt(sum_dv2 / n);
    cmp.rms_di_amps = std::sqrt(sum_di2 / n);
  }
  return cmp;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "t_hours,V_volts,I_amps,P_watts\n";
  out.precision(12);
  for (const TracePoint& row : trace.rows) {
    out << row.t_hours << ',' << row.v_volts << ',' << row.i_amps << ','
        << row.p_watts << '\n';
  }
}

}  // namespace epsrel
