#include "epsrel/sizing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace epsrel {

namespace {

void require_positive(double value, const char* what, ErrorCode code) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw Error(code, std::string(what) + " must be > 0");
  }
}

// Smallest integer n >= minimum with n * unit >= target, robust against the
// division landing on either side of an integer boundary.
int covering_count(double target, double unit, int minimum) {
  int n = std::max(minimum, static_cast<int>(std::ceil(target / unit)));
  while (static_cast<double>(n) * unit < target) ++n;
  while (n > minimum && static_cast<double>(n - 1) * unit >= target) --n;
  return n;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

int cell_count(double v_line, double v_cell) {
  require_positive(v_line, "line voltage", ErrorCode::NonPositiveVoltage);
  require_positive(v_cell, "cell voltage", ErrorCode::NonPositiveVoltage);
  return covering_count(v_line, v_cell, 1);
}

BatterySizingResult battery_capacity(const BatterySizingInput& input) {
  if (input.p_eclipse < 0 || input.t_eclipse < 0 ||
      !std::isfinite(input.p_eclipse) || !std::isfinite(input.t_eclipse)) {
    throw Error(ErrorCode::NonPositiveInput,
                "eclipse load and duration must be >= 0");
  }
  if (input.n_batteries < 1) {
    throw Error(ErrorCode::NonPositiveInput, "battery count must be >= 1");
  }
  if (!(input.eta_discharge > 0) || input.eta_discharge > 1) {
    throw Error(ErrorCode::NonPositiveEfficiency,
                "discharge efficiency must be in (0,1]");
  }
  if (!(input.depth_of_discharge > 0) || input.depth_of_discharge > 1) {
    throw Error(ErrorCode::NonPositiveInput,
                "depth of discharge must be in (0,1]");
  }

  BatterySizingResult result;
  result.cell_count = cell_count(input.v_line, input.v_cell);
  const double bracket =
      (result.cell_count - 1) * input.v_cell_discharge - input.v_drop;
  const double denominator = input.n_batteries * input.eta_discharge *
                             bracket * input.depth_of_discharge;
  if (!(denominator > 0)) {
    throw Error(ErrorCode::DegenerateDenominator,
                "(N-1)*V_cdis - V_d must be > 0 for the capacity formula");
  }
  result.capacity_ah = input.p_eclipse * input.t_eclipse / denominator;
  return result;
}

double array_power(const ArraySizingInput& input) {
  if (!(input.eta_power_conversion > 0) || input.eta_power_conversion > 1 ||
      !(input.eta_pointing > 0) || input.eta_pointing > 1) {
    throw Error(ErrorCode::NonPositiveEfficiency,
                "efficiencies must be in (0,1]");
  }
  if (input.p_average < 0 || input.p_peak < 0) {
    throw Error(ErrorCode::NonPositiveInput, "loads must be >= 0");
  }
  double peak_term = 0.0;
  if (input.p_peak > 0) {
    require_positive(input.t_peak, "peak-demand time",
                     ErrorCode::NonPositiveInput);
    require_positive(input.t_sunlight, "sunlight time",
                     ErrorCode::NonPositiveInput);
    require_positive(input.v_max, "max battery voltage",
                     ErrorCode::NonPositiveVoltage);
    require_positive(input.v_min, "min battery voltage",
                     ErrorCode::NonPositiveVoltage);
    peak_term = input.p_peak * input.t_peak / input.t_sunlight *
                (input.v_max / input.v_min);
  }
  return (input.p_average + peak_term) /
         (input.eta_power_conversion * input.eta_pointing);
}

ArrayLayout array_layout(double p_sa_watts, const ArraySizingInput& input) {
  require_positive(p_sa_watts, "array power", ErrorCode::NonPositiveInput);
  require_positive(input.v_bus, "bus voltage", ErrorCode::NonPositiveVoltage);
  require_positive(input.v_mp_eol, "cell max-power voltage",
                   ErrorCode::NonPositiveInput);
  require_positive(input.i_mp_eol, "cell max-power current",
                   ErrorCode::NonPositiveInput);
  ArrayLayout layout;
  layout.i_bus = p_sa_watts / input.v_bus;
  layout.n_series = covering_count(input.v_bus, input.v_mp_eol, 1);
  layout.n_parallel = covering_count(layout.i_bus, input.i_mp_eol, 1);
  return layout;
}

double estimate_lambda(double t_interval_hours, long failed_count,
                       long total_count) {
  if (!(t_interval_hours > 0) || !std::isfinite(t_interval_hours)) {
    throw Error(ErrorCode::NonPositiveInterval,
                "observation interval must be > 0 hours");
  }
  if (total_count <= 0 || failed_count < 0 || failed_count > total_count) {
    throw Error(ErrorCode::BadCounts,
                "need 0 <= failed <= total with total > 0");
  }
  return 1.0 / t_interval_hours *
         (static_cast<double>(failed_count) /
          static_cast<double>(total_count));
}

ComponentLibrary ComponentLibrary::builtin() {
  // Stored in failures per hour; the source table quotes multiples of
  // 1e-9 per hour at 40 C.
  ComponentLibrary lib;
  lib.entries_ = {
      {"Transistor", 1e-9, 70e-9},
      {"Thyristor", 36e-9, 360e-9},
      {"Digital integrated circuits", 30e-9, 30e-9},
      {"Logic elements", 30e-9, 30e-9},
      {"Analogue switch", 2000e-9, 2000e-9},
      {"Amplifier", 300e-9, 900e-9},
      {"Diodes", 1e-9, 6e-9},
      {"Li-Ion battery", 200e-9, 300e-9},
      {"Solar arrays", 100e-9, 200e-9},
  };
  return lib;
}

ComponentLibrary ComponentLibrary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open component library " + path);
  }
  ComponentLibrary lib;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    // name is tab-separated from the numeric columns so it can hold spaces
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::SyntaxError,
                  path + ":" + std::to_string(line_no) +
                      ": expected <name>\\t<low_e9> <high_e9>");
    }
    ComponentEntry entry;
    entry.name = line.substr(0, tab);
    std::istringstream rest(line.substr(tab + 1));
    double low_e9 = 0, high_e9 = 0;
    if (!(rest >> low_e9 >> high_e9)) {
      throw Error(ErrorCode::SyntaxError,
                  path + ":" + std::to_string(line_no) +
                      ": expected two rate columns (x1e-9 per hour)");
    }
    entry.lambda_low = low_e9 * 1e-9;
    entry.lambda_high = high_e9 * 1e-9;
    if (!(entry.lambda_low > 0) || entry.lambda_high < entry.lambda_low) {
      throw Error(ErrorCode::SchemaViolation,
                  path + ":" + std::to_string(line_no) +
                      ": need 0 < low <= high");
    }
    lib.entries_.push_back(std::move(entry));
  }
  return lib;
}

ComponentLibrary ComponentLibrary::from_environment() {
  if (const char* path = std::getenv("EPSREL_COMPONENT_LIB")) {
    return load(path);
  }
  return builtin();
}

std::optional<ComponentEntry> ComponentLibrary::try_lookup(
    const std::string& name) const {
  const std::string key = lower(name);
  for (const ComponentEntry& entry : entries_) {
    if (lower(entry.name) == key) return entry;
  }
  return std::nullopt;
}

const ComponentEntry& ComponentLibrary::lookup(const std::string& name) const {
  const std::string key = lower(name);
  for (const ComponentEntry& entry : entries_) {
    if (lower(entry.name) == key) return entry;
  }
  throw Error(ErrorCode::UnknownComponent,
              "no component named \"" + name + "\" in the library");
}

}  // namespace epsrel
