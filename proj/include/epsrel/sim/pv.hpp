#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsrel/sim/trace.hpp"

namespace epsrel {

/// Single-diode cell model composed into an N_s x N_p array.  Cells of one
/// string are in series and share the string current; strings are in
/// parallel behind blocking diodes (negative string current is clipped to
/// zero).
struct PVParams {
  double i_ph = 0.5;       // per-cell photocurrent at full irradiance, A
  double i_sat = 1e-9;     // diode saturation current, A
  double ideality = 1.3;
  double r_series = 0.01;  // ohms per cell
  double r_shunt = 100.0;  // ohms per cell, > 0
  double v_thermal = 0.0257;  // volts
  int n_series = 1;
  int n_parallel = 1;
  /// Per-string irradiance scale in [0,1]; empty means full sun everywhere.
  std::vector<double> string_irradiance;
  /// Per-string effective series cell count (what ground and line-line
  /// faults shrink); empty means n_series everywhere.
  std::vector<int> string_series;
};

struct PVFault {
  enum class Kind { Ground, LineLine, Mismatch, OpenString };
  Kind kind = Kind::Mismatch;
  int string_index = 0;
  int span = 1;                   // Ground: bypassed cells, LineLine: shorted span
  double irradiance_factor = 1.0; // Mismatch
  double onset_hours = 0.0;

  std::string describe() const;
};

struct PVLoad {
  enum class Kind { Resistive, FixedVoltage };
  Kind kind = Kind::Resistive;
  double value = 1.0;  // ohms or volts
};

/// Array current at array voltage V: per string, the implicit cell equation
///   I = g I_ph - I_sat (exp((V/N_s_eff + I R_s)/(n V_t)) - 1)
///       - (V/N_s_eff + I R_s)/R_sh
/// solved by safeguarded bisection until the residual is at most 1e-9 A, then
/// summed over strings with negative contributions clipped to zero.
double pv_iv(const PVParams& params, double v_volts);

/// Smallest array voltage with zero current (all strings blocked).
double pv_open_circuit_voltage(const PVParams& params);

/// Applies the fault to a copy of the layout: Ground/LineLine shrink the
/// struck string's effective series count, Mismatch scales its irradiance,
/// OpenString removes it.  Throws OutOfRange for indices/spans outside the
/// layout.
PVParams apply_pv_fault(const PVParams& params, const PVFault& fault);

/// Operating-point trace over [0, T]: each step intersects the load line
/// with the array IV curve (bisection for resistive loads, direct evaluation
/// for a fixed-voltage bus).  The fault acts from its onset.
Trace simulate_pv(const PVParams& params, const std::optional<PVFault>& fault,
                  const PVLoad& load, double dt_hours, double duration_hours);

}  // namespace epsrel
