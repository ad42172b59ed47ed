#include "epsrel/sim/battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epsrel {

BatteryParams battery_params_from_curve(const BatteryCurveAnchors& a) {
  if (!(a.v_full >= a.v_exp) || !(a.v_exp > a.v_nom)) {
    throw Error(ErrorCode::NonMonotoneAnchors,
                "need V_full >= V_exp > V_nom");
  }
  if (!(a.q_exp > 0) || !(a.q_nom > a.q_exp) || !(a.q_max > a.q_nom)) {
    throw Error(ErrorCode::NonMonotoneAnchors,
                "need 0 < Q_exp < Q_nom < Q_max");
  }
  if (a.r_int < 0 || a.i_rated < 0) {
    throw Error(ErrorCode::NonPositiveInput,
                "internal resistance and rated current must be >= 0");
  }
  BatteryParams p;
  p.a = a.v_full - a.v_exp;
  p.b = 3.0 / a.q_exp;
  p.k = (a.v_full - a.v_nom + p.a * std::expm1(-p.b * a.q_nom)) *
        (a.q_max - a.q_nom) / a.q_nom;
  p.e0 = a.v_full + p.k + a.r_int * a.i_rated - p.a;
  p.q_max = a.q_max;
  p.r_int = a.r_int;
  return p;
}

double battery_voltage(const BatteryParams& p, double q_extracted_ah,
                       double i_amps) {
  const double polarization = p.k * p.q_max / (p.q_max - q_extracted_ah);
  return p.e0 - polarization - p.r_int * i_amps +
         p.a * std::exp(-p.b * q_extracted_ah);
}

std::string BatteryFault::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::OpenCircuit:
      out << "open-circuit";
      break;
    case Kind::InternalShort:
      out << "internal-short R_leak=" << r_leak_ohms << " ohm";
      break;
    case Kind::ResistanceGrowth:
      out << "resistance-growth x" << factor;
      break;
    case Kind::CapacityFade:
      out << "capacity-fade x" << factor;
      break;
  }
  out << " @ " << onset_hours << " h";
  return out.str();
}

namespace {

double load_at(const LoadProfile& load, double t_hours) {
  double amps = 0.0;
  for (const LoadStep& step : load) {
    if (t_hours >= step.from_hours) amps = step.amps;
  }
  return amps;
}

void check_fault(const BatteryFault& fault) {
  if (fault.onset_hours < 0) {
    throw Error(ErrorCode::OutOfRange, "fault onset must be >= 0 hours");
  }
  switch (fault.kind) {
    case BatteryFault::Kind::InternalShort:
      if (!(fault.r_leak_ohms > 0)) {
        throw Error(ErrorCode::OutOfRange, "leak resistance must be > 0");
      }
      break;
    case BatteryFault::Kind::ResistanceGrowth:
      if (!(fault.factor >= 1)) {
        throw Error(ErrorCode::OutOfRange, "growth factor must be >= 1");
      }
      break;
    case BatteryFault::Kind::CapacityFade:
      if (!(fault.factor > 0) || fault.factor > 1) {
        throw Error(ErrorCode::OutOfRange, "fade factor must be in (0,1]");
      }
      break;
    case BatteryFault::Kind::OpenCircuit:
      break;
  }
}

}  // namespace

Trace simulate_battery(const BatteryParams& params, const LoadProfile& load,
                       const std::optional<BatteryFault>& fault,
                       double dt_hours, double duration_hours) {
  if (!(dt_hours > 0) || !(duration_hours >= dt_hours)) {
    throw Error(ErrorCode::BadStep, "need dt > 0 and duration >= dt");
  }
  if (!(params.q_max > 0)) {
    throw Error(ErrorCode::OutOfRange, "battery capacity must be > 0");
  }
  for (const LoadStep& step : load) {
    if (step.amps < 0) {
      throw Error(ErrorCode::OutOfRange,
                  "discharge-only model: load current must be >= 0");
    }
  }
  if (fault) check_fault(*fault);

  Trace trace;
  trace.scenario = fault ? fault->describe() : "healthy";

  const std::size_t steps =
      static_cast<std::size_t>(std::floor(duration_hours / dt_hours + 1e-9));
  trace.rows.reserve(steps + 1);

  double q = 0.0;  // extracted charge, Ah
  double v_prev = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt_hours;
    const bool fault_active = fault && t >= fault->onset_hours;

    double r_eff = params.r_int;
    double q_eff = params.q_max;
    if (fault_active) {
      if (fault->kind == BatteryFault::Kind::ResistanceGrowth) {
        r_eff *= fault->factor;
      } else if (fault->kind == BatteryFault::Kind::CapacityFade) {
        q_eff *= fault->factor;
      }
    }
    if (q >= 0.999 * q_eff) {
      trace.charge_exhausted = true;
      break;
    }

    const double i_load = load_at(load, t);
    double i_terminal = i_load;
    double i_extraction = i_load;
    if (fault_active && fault->kind == BatteryFault::Kind::OpenCircuit) {
      i_terminal = 0.0;
      i_extraction = 0.0;
    } else if (fault_active &&
               fault->kind == BatteryFault::Kind::InternalShort) {
      // Leakage driven by the previous terminal voltage (explicit step).
      i_extraction = i_load + std::max(0.0, v_prev) / fault->r_leak_ohms;
    }

    BatteryParams effective = params;
    effective.q_max = q_eff;
    effective.r_int = r_eff;
    const double i_through_cell =
        (fault_active && fault->kind == BatteryFault::Kind::InternalShort)
            ? i_extraction
            : i_terminal;
    const double v = battery_voltage(effective, q, i_through_cell);

    trace.rows.push_back({t, v, i_terminal, v * i_terminal});
    v_prev = v;
    q += i_extraction * dt_hours;
  }
  return trace;
}

}  // namespace epsrel
