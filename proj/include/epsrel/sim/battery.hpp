#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsrel/sim/trace.hpp"

namespace epsrel {

/// Generic discharge-curve model
///   V(q, i) = E0 - K * Q/(Q - q) - R*i + A*exp(-B*q)
/// with q the extracted charge in Ah.
struct BatteryParams {
  double e0 = 0.0;     // volts
  double k = 0.0;      // volts (polarization)
  double q_max = 0.0;  // Ah
  double a = 0.0;      // volts (exponential-zone amplitude)
  double b = 0.0;      // 1/Ah (exponential-zone decay)
  double r_int = 0.0;  // ohms
};

/// Three-anchor description of a measured discharge curve at rated current:
/// full-charge point, end of the exponential zone, and the nominal point.
struct BatteryCurveAnchors {
  double v_full = 0.0;
  double v_exp = 0.0;
  double q_exp = 0.0;  // Ah
  double v_nom = 0.0;
  double q_nom = 0.0;  // Ah
  double q_max = 0.0;  // Ah
  double i_rated = 0.0;
  double r_int = 0.0;
};

/// Closed-form fit: A = V_full - V_exp; B = 3/Q_exp;
/// K = (V_full - V_nom + A(exp(-B Q_nom) - 1)) (Q_max - Q_nom)/Q_nom;
/// E0 = V_full + K + R i_rated - A.
/// Requires V_full > V_exp > V_nom (V_full = V_exp collapses the
/// exponential zone) and 0 < Q_exp < Q_nom < Q_max.
BatteryParams battery_params_from_curve(const BatteryCurveAnchors& anchors);

/// Terminal voltage at extracted charge q under discharge current i.
double battery_voltage(const BatteryParams& params, double q_extracted_ah,
                       double i_amps);

struct BatteryFault {
  enum class Kind { OpenCircuit, InternalShort, ResistanceGrowth, CapacityFade };
  Kind kind = Kind::OpenCircuit;
  double onset_hours = 0.0;
  double r_leak_ohms = 0.0;  // InternalShort
  double factor = 1.0;       // ResistanceGrowth (>= 1) / CapacityFade ((0,1])

  std::string describe() const;
};

/// Piecewise-constant load: each step applies from its start time until the
/// next one.  A single entry is a constant load.
struct LoadStep {
  double from_hours = 0.0;
  double amps = 0.0;
};
using LoadProfile = std::vector<LoadStep>;

/// Fixed-step discharge simulation over [0, T].  Fault effects apply from
/// their onset: OpenCircuit zeroes the terminal current and reports the
/// open-circuit EMF, InternalShort drains extra V/R_leak, ResistanceGrowth
/// scales the internal resistance, CapacityFade scales the usable capacity.
/// The run truncates (flagged, not an error) once extracted charge reaches
/// 99.9% of the usable capacity.
Trace simulate_battery(const BatteryParams& params, const LoadProfile& load,
                       const std::optional<BatteryFault>& fault,
                       double dt_hours, double duration_hours);

}  // namespace epsrel
