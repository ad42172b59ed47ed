#include "epsrel/sim/pv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace epsrel {

namespace {

struct StringState {
  int n_series = 1;
  double irradiance = 1.0;
};

std::vector<StringState> string_states(const PVParams& p) {
  std::vector<StringState> strings(static_cast<std::size_t>(p.n_parallel));
  for (std::size_t s = 0; s < strings.size(); ++s) {
    strings[s].n_series =
        s < p.string_series.size() ? p.string_series[s] : p.n_series;
    strings[s].irradiance =
        s < p.string_irradiance.size() ? p.string_irradiance[s] : 1.0;
  }
  return strings;
}

void check_params(const PVParams& p) {
  if (p.n_series < 1 || p.n_parallel < 1) {
    throw Error(ErrorCode::OutOfRange, "array layout needs N_s, N_p >= 1");
  }
  if (!(p.r_shunt > 0) || p.r_series < 0 || !(p.v_thermal > 0) ||
      !(p.ideality > 0) || !(p.i_sat > 0) || p.i_ph < 0) {
    throw Error(ErrorCode::OutOfRange, "non-physical cell parameters");
  }
  for (double g : p.string_irradiance) {
    if (g < 0 || g > 1) {
      throw Error(ErrorCode::OutOfRange, "irradiance factors must be in [0,1]");
    }
  }
  for (int n : p.string_series) {
    if (n < 1 || n > p.n_series) {
      throw Error(ErrorCode::OutOfRange,
                  "per-string series counts must be in [1, N_s]");
    }
  }
}

// Residual of the implicit cell equation at string current i.
double cell_residual(const PVParams& p, const StringState& s, double v_cell,
                     double i) {
  const double v_diode = v_cell + i * p.r_series;
  return s.irradiance * p.i_ph -
         p.i_sat * std::expm1(v_diode / (p.ideality * p.v_thermal)) -
         v_diode / p.r_shunt - i;
}

// String current at array voltage v; solutions at or below zero current are
// blocked by the string diode.  The residual is strictly decreasing in i,
// so a sign change brackets the unique root.
double string_current(const PVParams& p, const StringState& s, double v) {
  const double v_cell = v / s.n_series;
  double lo = 0.0;
  double f_lo = cell_residual(p, s, v_cell, lo);
  if (f_lo <= 0.0) return 0.0;
  double hi = std::max(s.irradiance * p.i_ph, 1e-12);
  double f_hi = cell_residual(p, s, v_cell, hi);
  for (int i = 0; i < 64 && f_hi > 0.0; ++i) {
    hi *= 2;  // shunt losses can push the root past g*I_ph near v = 0
    f_hi = cell_residual(p, s, v_cell, hi);
  }
  if (f_hi > 0.0) {
    throw Error(ErrorCode::NoConvergence, "could not bracket string current");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (cell_residual(p, s, v_cell, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double i = 0.5 * (lo + hi);
  if (std::abs(cell_residual(p, s, v_cell, i)) > 1e-9) {
    throw Error(ErrorCode::NoConvergence,
                "string current residual above 1e-9 A");
  }
  return i;
}

}  // namespace

double pv_iv(const PVParams& params, double v_volts) {
  check_params(params);
  if (v_volts < 0) {
    throw Error(ErrorCode::OutOfRange, "array voltage must be >= 0");
  }
  double total = 0.0;
  for (const StringState& s : string_states(params)) {
    total += std::max(0.0, string_current(params, s, v_volts));
  }
  return total;
}

double pv_open_circuit_voltage(const PVParams& params) {
  check_params(params);
  // Upper bound: ideal-diode open-circuit voltage of the strongest string.
  double hi = 0.0;
  for (const StringState& s : string_states(params)) {
    if (s.irradiance <= 0) continue;
    const double v_cell = params.ideality * params.v_thermal *
                          std::log1p(s.irradiance * params.i_ph / params.i_sat);
    hi = std::max(hi, s.n_series * v_cell);
  }
  if (hi <= 0.0) return 0.0;  // dark array
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (pv_iv(params, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string PVFault::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Ground:
      out << "ground string=" << string_index << " bypassed=" << span;
      break;
    case Kind::LineLine:
      out << "line-line string=" << string_index << " span=" << span;
      break;
    case Kind::Mismatch:
      out << "mismatch string=" << string_index
          << " factor=" << irradiance_factor;
      break;
    case Kind::OpenString:
      out << "open-string string=" << string_index;
      break;
  }
  out << " @ " << onset_hours << " h";
  return out.str();
}

PVParams apply_pv_fault(const PVParams& params, const PVFault& fault) {
  check_params(params);
  if (fault.string_index < 0 || fault.string_index >= params.n_parallel) {
    throw Error(ErrorCode::OutOfRange, "fault string index outside layout");
  }
  PVParams out = params;
  out.string_irradiance.resize(static_cast<std::size_t>(params.n_parallel));
  out.string_series.resize(static_cast<std::size_t>(params.n_parallel));
  for (std::size_t s = 0; s < static_cast<std::size_t>(params.n_parallel);
       ++s) {
    out.string_irradiance[s] = s < params.string_irradiance.size()
                                   ? params.string_irradiance[s]
                                   : 1.0;
    out.string_series[s] =
        s < params.string_series.size() ? params.string_series[s]
                                        : params.n_series;
  }
  const auto idx = static_cast<std::size_t>(fault.string_index);
  switch (fault.kind) {
    case PVFault::Kind::Ground:
    case PVFault::Kind::LineLine:
      // Dominant electrical effect: the struck string loses `span` series
      // cells (shorted to ground / across the span).
      if (fault.span < 1 || fault.span >= out.string_series[idx]) {
        throw Error(ErrorCode::OutOfRange,
                    "shorted/bypassed span must leave at least one cell");
      }
      out.string_series[idx] -= fault.span;
      break;
    case PVFault::Kind::Mismatch:
      if (fault.irradiance_factor < 0 || fault.irradiance_factor > 1) {
        throw Error(ErrorCode::OutOfRange, "mismatch factor must be in [0,1]");
      }
      out.string_irradiance[idx] *= fault.irradiance_factor;
      break;
    case PVFault::Kind::OpenString:
      out.string_irradiance[idx] = 0.0;
      break;
  }
  return out;
}

namespace {

// Steady operating point of the array against the load.
TracePoint operating_point(const PVParams& state, const PVLoad& load) {
  TracePoint point;
  if (load.kind == PVLoad::Kind::FixedVoltage) {
    point.v_volts = load.value;
    point.i_amps = pv_iv(state, load.value);
  } else {
    // Intersect non-increasing I(V) with the rising load line V/R.
    double hi = pv_open_circuit_voltage(state);
    if (hi > 0.0) {
      double lo = 0.0;
      for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (pv_iv(state, mid) - mid / load.value > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      point.v_volts = 0.5 * (lo + hi);
      point.i_amps = point.v_volts / load.value;
    }
  }
  point.p_watts = point.v_volts * point.i_amps;
  return point;
}

}  // namespace

Trace simulate_pv(const PVParams& params, const std::optional<PVFault>& fault,
                  const PVLoad& load, double dt_hours, double duration_hours) {
  check_params(params);
  if (!(dt_hours > 0) || !(duration_hours >= dt_hours)) {
    throw Error(ErrorCode::BadStep, "need dt > 0 and duration >= dt");
  }
  if (!(load.value > 0)) {
    throw Error(ErrorCode::OutOfRange, "load value must be > 0");
  }
  if (fault && fault->onset_hours < 0) {
    throw Error(ErrorCode::OutOfRange, "fault onset must be >= 0 hours");
  }

  Trace trace;
  trace.scenario = fault ? fault->describe() : "healthy";

  // Conditions are constant on either side of the onset, so only two
  // operating points exist.
  const TracePoint healthy_point = operating_point(params, load);
  TracePoint faulty_point = healthy_point;
  if (fault) {
    faulty_point = operating_point(apply_pv_fault(params, *fault), load);
  }

  const std::size_t steps =
      static_cast<std::size_t>(std::floor(duration_hours / dt_hours + 1e-9));
  trace.rows.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt_hours;
    TracePoint row =
        (fault && t >= fault->onset_hours) ? faulty_point : healthy_point;
    row.t_hours = t;
    trace.rows.push_back(row);
  }
  return trace;
}

}  // namespace epsrel
