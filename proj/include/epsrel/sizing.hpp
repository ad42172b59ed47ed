#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsrel/error.hpp"

namespace epsrel {

/// Inputs to the battery sizing formulas.  Voltages in volts, power in
/// watts, times in hours; efficiencies and depth of discharge in (0,1].
struct BatterySizingInput {
  double v_line = 0.0;    // bus line voltage the cells stack up to
  double v_cell = 0.0;    // average cell discharge voltage
  double p_eclipse = 0.0; // eclipse-phase load
  double t_eclipse = 0.0; // eclipse duration
  int n_batteries = 1;    // parallel batteries
  double eta_discharge = 1.0;
  double v_cell_discharge = 0.0;  // average discharge voltage term
  double v_drop = 0.0;            // line drop term
  double depth_of_discharge = 1.0;
};

struct BatterySizingResult {
  int cell_count = 0;
  double capacity_ah = 0.0;
};

/// Inputs to the solar-array sizing formulas.
struct ArraySizingInput {
  double eta_power_conversion = 1.0;
  double eta_pointing = 1.0;     // pointing/tracking deviation efficiency
  double p_average = 0.0;        // watts
  double p_peak = 0.0;           // watts
  double t_peak = 0.0;           // hours of peak demand
  double t_sunlight = 0.0;       // hours of sunlight
  double v_max = 0.0;            // battery voltage bounds, volts
  double v_min = 0.0;
  double v_bus = 0.0;
  double v_mp_eol = 0.0;  // cell max-power voltage at end of life
  double i_mp_eol = 0.0;  // cell max-power current at end of life
};

struct ArrayLayout {
  double i_bus = 0.0;  // amps
  int n_series = 0;
  int n_parallel = 0;
};

/// One row of the component failure-rate library (rates at 40 C).
struct ComponentEntry {
  std::string name;
  double lambda_low = 0.0;   // failures per hour
  double lambda_high = 0.0;  // failures per hour

  double lambda_mid() const { return (lambda_low + lambda_high) / 2.0; }
};

/// Smallest cell count whose stacked voltage covers the line voltage
/// (ceiling of v_line / v_cell, at least 1).
int cell_count(double v_line, double v_cell);

/// C = P_e T_e / (N_b eta_dis [(N-1) V_cdis - V_d] DOD) with N from
/// cell_count.  Throws DegenerateDenominator when the bracket or any factor
/// makes the denominator non-positive.
BatterySizingResult battery_capacity(const BatterySizingInput& input);

/// P_sa = (P_av + (P_p t_p / t_s)(V_max / V_min)) / (eta_pc eta_d).
double array_power(const ArraySizingInput& input);

/// I_bus = P_sa / V_bus; N_s = ceil(V_bus / V_mp_eol);
/// N_p = ceil(I_bus / I_mp_eol).
ArrayLayout array_layout(double p_sa_watts, const ArraySizingInput& input);

/// Empirical fault rate lambda = (1/t_int)(N_f/N_t).
double estimate_lambda(double t_interval_hours, long failed_count,
                       long total_count);

/// Failure-rate library, keyed case-insensitively by component name.
class ComponentLibrary {
 public:
  /// The built-in table of nine component classes at 40 C.
  static ComponentLibrary builtin();
  /// Parse from a whitespace-separated data file (see data/components_40c.tsv
  /// for the format).  Lines starting with '#' are comments.
  static ComponentLibrary load(const std::string& path);
  /// `load(path)` when the EPSREL_COMPONENT_LIB environment variable names a
  /// file, the builtin table otherwise.
  static ComponentLibrary from_environment();

  const ComponentEntry& lookup(const std::string& name) const;
  std::optional<ComponentEntry> try_lookup(const std::string& name) const;
  const std::vector<ComponentEntry>& entries() const { return entries_; }

 private:
  std::vector<ComponentEntry> entries_;
};

}  // namespace epsrel
