// Command-line front end for the EPS reliability workbench: fault-tree
// quantification, cut sets, scenario enumeration, sizing calculators,
// battery/PV fault simulation, and risk matrices.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsrel/cut_sets.hpp"
#include "epsrel/fault_tree.hpp"
#include "epsrel/io/report.hpp"
#include "epsrel/io/tree_format.hpp"
#include "epsrel/quant.hpp"
#include "epsrel/risk_matrix.hpp"
#include "epsrel/scenario.hpp"
#include "epsrel/sim/battery.hpp"
#include "epsrel/sim/pv.hpp"
#include "epsrel/sizing.hpp"

namespace {

constexpr const char* kToolVersion = "epsrel 1.0.0";

using epsrel::Error;
using epsrel::ErrorCode;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << bytes;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

epsrel::ReportFormat parse_format(const std::string& name) {
  if (name == "text") return epsrel::ReportFormat::Text;
  if (name == "json") return epsrel::ReportFormat::Structured;
  if (name == "csv") return epsrel::ReportFormat::Csv;
  throw CLI::ValidationError("--format", "expected text, json, or csv");
}

std::vector<std::string> split_commas(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Events without an explicit model pick up the library midpoint when their
// description names a library component.
void apply_library_defaults(epsrel::TreeDocument& doc) {
  const epsrel::ComponentLibrary library =
      epsrel::ComponentLibrary::from_environment();
  for (epsrel::EventDef& event : doc.events) {
    if (event.model || (event.kind != epsrel::EventKind::Basic &&
                        event.kind != epsrel::EventKind::Undeveloped)) {
      continue;
    }
    if (auto entry = library.try_lookup(event.description)) {
      event.model = epsrel::FailureRateOnly{entry->lambda_mid()};
    }
  }
}

struct LoadedTree {
  epsrel::TreeDocument doc;
  epsrel::FaultTree tree;
  epsrel::ModelMap models;
  std::string hash;
  std::string path;
};

LoadedTree load_tree(const std::string& path, bool library_defaults) {
  LoadedTree loaded;
  loaded.path = path;
  const std::string bytes = read_file(path);
  loaded.hash = epsrel::fnv1a64_hex(bytes);
  loaded.doc = epsrel::parse_tree_text(bytes, path);
  if (library_defaults) apply_library_defaults(loaded.doc);
  loaded.tree = loaded.doc.to_fault_tree();
  loaded.models = loaded.doc.models();
  return loaded;
}

epsrel::RiskThresholds risk_thresholds_from_environment() {
  epsrel::RiskThresholds thresholds;
  const char* path = std::getenv("EPSREL_RISK_CONFIG");
  if (path == nullptr) return thresholds;
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError,
                std::string(path) + ": " + e.what());
  }
  if (config.contains("likelihood_cuts")) {
    const auto& cuts = config["likelihood_cuts"];
    if (!cuts.is_array() || cuts.size() != 4) {
      throw Error(ErrorCode::BadThresholds,
                  "likelihood_cuts must hold four ascending values");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      thresholds.likelihood_cuts[i] = cuts[i].get<double>();
    }
  }
  if (config.contains("yellow_min")) {
    thresholds.yellow_min = config["yellow_min"].get<int>();
  }
  if (config.contains("red_min")) {
    thresholds.red_min = config["red_min"].get<int>();
  }
  epsrel::validate_thresholds(thresholds);
  return thresholds;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string tree_path;
  double mission_hours = 0.0;
  std::string method = "exact";
  std::string format = "text";
  std::string out_path;
  std::string time_grid;
  int severity = 0;  // 0 = no risk matrix
  bool no_timestamp = false;
  bool no_library_default = false;
};

int run_analyze(const AnalyzeOptions& options) {
  LoadedTree loaded =
      load_tree(options.tree_path, !options.no_library_default);
  const epsrel::QuantMethod method = options.method == "exact"
                                         ? epsrel::QuantMethod::Exact
                                         : epsrel::QuantMethod::RareEvent;

  epsrel::MissionProfile profile;
  profile.mission_hours = options.mission_hours;
  for (const std::string& t : split_commas(options.time_grid)) {
    profile.time_grid.push_back(std::stod(t));
  }

  epsrel::ReportDocument report;
  report.mission_hours = options.mission_hours;
  report.method = options.method;
  report.quant =
      epsrel::quantify_mission(loaded.tree, loaded.models, profile, method);
  report.cut_sets = epsrel::minimal_cut_sets(loaded.tree);
  if (loaded.tree.stochastic_events().size() <=
      epsrel::kMaxEnumerationEvents) {
    report.scenario = epsrel::enumerate_scenarios(loaded.tree);
  }
  if (!profile.time_grid.empty()) {
    report.reliability_curve =
        epsrel::reliability_curve(loaded.tree, loaded.models, profile, method);
  }
  if (options.severity > 0) {
    const epsrel::RiskThresholds thresholds =
        risk_thresholds_from_environment();
    std::vector<epsrel::RiskItem> items;
    items.push_back({"top:" + loaded.tree.top,
                     1.0 - report.quant.reliability_mission,
                     options.severity});
    for (const epsrel::CutSet& cs : report.cut_sets) {
      double q = 1.0;
      for (const std::string& id : cs.events) {
        q *= epsrel::event_unreliability(loaded.models.at(id),
                                         options.mission_hours);
      }
      std::string name = "cutset:";
      for (std::size_t i = 0; i < cs.events.size(); ++i) {
        if (i) name += '+';
        name += cs.events[i];
      }
      items.push_back({name, q, options.severity});
    }
    report.risk = epsrel::classify(items, thresholds);
  }
  report.provenance = {loaded.path, loaded.hash, kToolVersion,
                       options.no_timestamp ? std::string()
                                            : epsrel::iso8601_utc_now()};
  emit(epsrel::emit_report(report, parse_format(options.format)),
       options.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// cutsets / enumerate

int run_cutsets(const std::string& tree_path, const std::string& format,
                const std::string& out_path, bool no_library_default) {
  LoadedTree loaded = load_tree(tree_path, !no_library_default);
  emit(epsrel::emit_cut_sets(epsrel::minimal_cut_sets(loaded.tree),
                             parse_format(format)),
       out_path);
  return 0;
}

struct EnumerateOptions {
  std::string tree_path;
  std::string fail_gate;
  std::string recoverable;
  std::string exclude;
  std::string format = "text";
  std::string out_path;
};

int run_enumerate(const EnumerateOptions& options) {
  LoadedTree loaded = load_tree(options.tree_path, false);
  epsrel::ScenarioClassifierConfig config;
  config.fail_gate = options.fail_gate;
  for (const std::string& id : split_commas(options.recoverable)) {
    config.recoverable_gates.insert(id);
  }
  for (const std::string& id : split_commas(options.exclude)) {
    config.excluded_events.insert(id);
  }
  const epsrel::ScenarioStats stats =
      epsrel::enumerate_scenarios(loaded.tree, config);
  emit(epsrel::emit_scenario_table(stats, parse_format(options.format)),
       options.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// size

int run_size_battery(const epsrel::BatterySizingInput& input) {
  const epsrel::BatterySizingResult result = epsrel::battery_capacity(input);
  std::cout << "battery sizing\n";
  std::cout << "  cells in series: " << result.cell_count << '\n';
  std::cout << "  capacity: " << std::fixed << std::setprecision(6)
            << result.capacity_ah << " Ah\n";
  return 0;
}

int run_size_array(const epsrel::ArraySizingInput& input) {
  const double p_sa = epsrel::array_power(input);
  const epsrel::ArrayLayout layout = epsrel::array_layout(p_sa, input);
  std::cout << "solar array sizing\n" << std::fixed << std::setprecision(6);
  std::cout << "  required power: " << p_sa << " W\n";
  std::cout << "  bus current: " << layout.i_bus << " A\n";
  std::cout << "  series cells per string: " << layout.n_series << '\n';
  std::cout << "  parallel strings: " << layout.n_parallel << '\n';
  return 0;
}

int run_size_rate(double interval_hours, long failed, long total) {
  const double lambda = epsrel::estimate_lambda(interval_hours, failed, total);
  std::cout << "estimated fault rate: " << std::scientific
            << std::setprecision(6) << lambda << " per hour ("
            << lambda * 1e9 << " x1e-9/h)\n";
  return 0;
}

int run_components(const std::string& name) {
  const epsrel::ComponentLibrary library =
      epsrel::ComponentLibrary::from_environment();
  std::cout << std::scientific << std::setprecision(3);
  if (!name.empty()) {
    const epsrel::ComponentEntry& entry = library.lookup(name);
    std::cout << entry.name << ": " << entry.lambda_low * 1e9 << "-"
              << entry.lambda_high * 1e9 << " x1e-9/h (midpoint "
              << entry.lambda_mid() * 1e9 << ")\n";
    return 0;
  }
  std::cout << "component fault-rate library (x1e-9 per hour, 40 C)\n";
  for (const epsrel::ComponentEntry& entry : library.entries()) {
    std::cout << "  " << entry.name << ": " << entry.lambda_low * 1e9 << "-"
              << entry.lambda_high * 1e9 << " (midpoint "
              << entry.lambda_mid() * 1e9 << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

epsrel::BatteryFault parse_battery_fault(const std::string& spec,
                                         double onset_hours) {
  epsrel::BatteryFault fault;
  fault.onset_hours = onset_hours;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "open-circuit") {
    fault.kind = epsrel::BatteryFault::Kind::OpenCircuit;
  } else if (kind == "internal-short") {
    fault.kind = epsrel::BatteryFault::Kind::InternalShort;
    fault.r_leak_ohms = arg.empty() ? 10.0 : std::stod(arg);
  } else if (kind == "resistance-growth") {
    fault.kind = epsrel::BatteryFault::Kind::ResistanceGrowth;
    fault.factor = arg.empty() ? 5.0 : std::stod(arg);
  } else if (kind == "capacity-fade") {
    fault.kind = epsrel::BatteryFault::Kind::CapacityFade;
    fault.factor = arg.empty() ? 0.5 : std::stod(arg);
  } else {
    throw CLI::ValidationError(
        "--fault", "expected open-circuit, internal-short[:R], "
                   "resistance-growth[:F], or capacity-fade[:F]");
  }
  return fault;
}

epsrel::PVFault parse_pv_fault(const std::string& spec, double onset_hours) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(spec);
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.empty()) {
    throw CLI::ValidationError("--fault", "empty fault spec");
  }
  epsrel::PVFault fault;
  fault.onset_hours = onset_hours;
  const std::string& kind = parts[0];
  auto arg = [&parts](std::size_t i, double fallback) {
    return parts.size() > i ? std::stod(parts[i]) : fallback;
  };
  if (kind == "ground") {
    fault.kind = epsrel::PVFault::Kind::Ground;
    fault.string_index = static_cast<int>(arg(1, 0));
    fault.span = static_cast<int>(arg(2, 1));
  } else if (kind == "line-line") {
    fault.kind = epsrel::PVFault::Kind::LineLine;
    fault.string_index = static_cast<int>(arg(1, 0));
    fault.span = static_cast<int>(arg(2, 1));
  } else if (kind == "mismatch") {
    fault.kind = epsrel::PVFault::Kind::Mismatch;
    fault.string_index = static_cast<int>(arg(1, 0));
    fault.irradiance_factor = arg(2, 0.5);
  } else if (kind == "open-string") {
    fault.kind = epsrel::PVFault::Kind::OpenString;
    fault.string_index = static_cast<int>(arg(1, 0));
  } else {
    throw CLI::ValidationError(
        "--fault", "expected ground:S:K, line-line:S:K, mismatch:S:F, or "
                   "open-string:S");
  }
  return fault;
}

std::string hash_params(const std::initializer_list<double>& values) {
  std::ostringstream out;
  out.precision(17);
  for (double v : values) out << v << ';';
  return epsrel::fnv1a64_hex(out.str());
}

void write_trace_pair(const std::string& prefix, const epsrel::Trace& healthy,
                      const std::optional<epsrel::Trace>& faulty,
                      const std::string& params_hash, double dt_hours,
                      double duration_hours) {
  {
    std::ostringstream csv;
    epsrel::write_trace_csv(healthy, csv);
    write_file(prefix + "_healthy.csv", csv.str());
  }
  nlohmann::json meta = {
      {"format", "epsrel-trace-meta 1"},
      {"scenario", healthy.scenario},
      {"params_hash", params_hash},
      {"dt_hours", dt_hours},
      {"duration_hours", duration_hours},
      {"charge_exhausted", healthy.charge_exhausted},
  };
  if (faulty) {
    std::ostringstream csv;
    epsrel::write_trace_csv(*faulty, csv);
    write_file(prefix + "_faulty.csv", csv.str());
    meta["fault"] = faulty->scenario;
    meta["fault_charge_exhausted"] = faulty->charge_exhausted;

    if (faulty->rows.size() == healthy.rows.size()) {
      const epsrel::TraceComparison cmp =
          epsrel::compare_traces(healthy, *faulty);
      std::cout << "healthy vs faulty: ";
      if (cmp.first_divergence_hours) {
        std::cout << "first divergence at " << *cmp.first_divergence_hours
                  << " h";
      } else {
        std::cout << "no divergence";
      }
      std::cout << ", rms dV " << cmp.rms_dv_volts << " V, rms dI "
                << cmp.rms_di_amps << " A\n";
    } else {
      std::cout << "healthy vs faulty: grids differ (one run exhausted "
                   "early); no comparison\n";
    }
  }
  write_file(prefix + "_meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << prefix << "_healthy.csv";
  if (faulty) std::cout << " and " << prefix << "_faulty.csv";
  std::cout << '\n';
}

struct SimBatteryOptions {
  epsrel::BatteryCurveAnchors anchors{4.2, 3.9, 0.3, 3.6, 2.0, 2.3, 1.0, 0.05};
  double load_amps = 1.0;
  double dt_seconds = 1.0;
  double duration_hours = 2.0;
  std::string fault;
  double onset_hours = 1.0;
  std::string out_prefix = "battery";
};

int run_simulate_battery(const SimBatteryOptions& options) {
  const epsrel::BatteryParams params =
      epsrel::battery_params_from_curve(options.anchors);
  const double dt_hours = options.dt_seconds / 3600.0;
  const epsrel::LoadProfile load = {{0.0, options.load_amps}};

  const epsrel::Trace healthy = epsrel::simulate_battery(
      params, load, std::nullopt, dt_hours, options.duration_hours);
  std::optional<epsrel::Trace> faulty;
  if (!options.fault.empty()) {
    faulty = epsrel::simulate_battery(
        params, load, parse_battery_fault(options.fault, options.onset_hours),
        dt_hours, options.duration_hours);
  }
  write_trace_pair(options.out_prefix, healthy, faulty,
                   hash_params({params.e0, params.k, params.q_max, params.a,
                                params.b, params.r_int, options.load_amps}),
                   dt_hours, options.duration_hours);
  return 0;
}

struct SimPvOptions {
  epsrel::PVParams params;
  double load_ohms = 0.0;
  double bus_volts = 0.0;
  double dt_seconds = 1.0;
  double duration_hours = 2.0;
  std::string fault;
  double onset_hours = 1.0;
  std::string out_prefix = "pv";
};

int run_simulate_pv(const SimPvOptions& options) {
  epsrel::PVLoad load;
  if (options.bus_volts > 0) {
    load = {epsrel::PVLoad::Kind::FixedVoltage, options.bus_volts};
  } else {
    load = {epsrel::PVLoad::Kind::Resistive,
            options.load_ohms > 0 ? options.load_ohms : 3.0};
  }
  const double dt_hours = options.dt_seconds / 3600.0;

  const epsrel::Trace healthy = epsrel::simulate_pv(
      options.params, std::nullopt, load, dt_hours, options.duration_hours);
  std::optional<epsrel::Trace> faulty;
  if (!options.fault.empty()) {
    faulty = epsrel::simulate_pv(
        options.params, parse_pv_fault(options.fault, options.onset_hours),
        load, dt_hours, options.duration_hours);
  }
  write_trace_pair(
      options.out_prefix, healthy, faulty,
      hash_params({options.params.i_ph, options.params.i_sat,
                   options.params.ideality, options.params.r_series,
                   options.params.r_shunt, options.params.v_thermal,
                   static_cast<double>(options.params.n_series),
                   static_cast<double>(options.params.n_parallel),
                   load.value}),
      dt_hours, options.duration_hours);
  return 0;
}

// ---------------------------------------------------------------------------
// risk

std::vector<epsrel::RiskItem> parse_risk_items(const std::string& path) {
  const std::string bytes = read_file(path);
  std::istringstream in(bytes);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  std::vector<epsrel::RiskItem> items;
  auto fail = [&](const std::string& message) {
    throw Error(ErrorCode::SyntaxError,
                path + ":" + std::to_string(line_no) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    std::string head;
    if (!(row >> head) || head.starts_with('#')) continue;
    if (!saw_header) {
      int version = 0;
      if (head != "riskitems" || !(row >> version) || version != 1) {
        fail("expected header \"riskitems 1\"");
      }
      saw_header = true;
      continue;
    }
    if (head != "item") fail("expected \"item <name> <prob> <severity>\"");
    epsrel::RiskItem item;
    if (!(row >> item.name >> item.probability >> item.severity)) {
      fail("expected \"item <name> <prob> <severity>\"");
    }
    items.push_back(std::move(item));
  }
  if (!saw_header) {
    line_no = 1;
    fail("empty file: expected header \"riskitems 1\"");
  }
  return items;
}

int run_risk(const std::string& items_path, const std::string& format,
             const std::string& out_path) {
  const std::vector<epsrel::RiskItem> items = parse_risk_items(items_path);
  const epsrel::RiskMatrix matrix =
      epsrel::classify(items, risk_thresholds_from_environment());
  emit(epsrel::emit_risk_matrix(matrix, parse_format(format)), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satellite EPS reliability workbench"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  long seed = 0;
  app.add_option("--seed", seed,
                 "reserved for future stochastic features (unused)");

  // analyze
  AnalyzeOptions analyze;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "quantify a fault tree over a mission");
  analyze_cmd->add_option("tree", analyze.tree_path, "tree file")->required();
  analyze_cmd->add_option("--mission-hours", analyze.mission_hours,
                          "mission duration in hours")
      ->required();
  analyze_cmd->add_option("--method", analyze.method, "exact or rare-event")
      ->check(CLI::IsMember({"exact", "rare-event"}));
  analyze_cmd->add_option("--format", analyze.format, "text, json, or csv");
  analyze_cmd->add_option("--out", analyze.out_path, "write here (default stdout)");
  analyze_cmd->add_option("--time-grid", analyze.time_grid,
                          "comma-separated instants for a reliability curve");
  analyze_cmd->add_option("--severity", analyze.severity,
                          "severity 1..5: add a risk matrix over top event "
                          "and cut sets")
      ->check(CLI::Range(1, 5));
  analyze_cmd->add_flag("--no-timestamp", analyze.no_timestamp,
                        "suppress the provenance timestamp (golden outputs)");
  analyze_cmd->add_flag("--no-library-default", analyze.no_library_default,
                        "do not fill missing event models from the component "
                        "library");

  // cutsets
  std::string cutsets_tree;
  std::string cutsets_format = "text";
  std::string cutsets_out;
  bool cutsets_no_default = false;
  CLI::App* cutsets_cmd =
      app.add_subcommand("cutsets", "list minimal cut sets");
  cutsets_cmd->add_option("tree", cutsets_tree, "tree file")->required();
  cutsets_cmd->add_option("--format", cutsets_format, "text, json, or csv");
  cutsets_cmd->add_option("--out", cutsets_out, "write here (default stdout)");
  cutsets_cmd->add_flag("--no-library-default", cutsets_no_default,
                        "do not fill missing event models");

  // enumerate
  EnumerateOptions enumerate;
  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "classify every multi-fault combination");
  enumerate_cmd->add_option("tree", enumerate.tree_path, "tree file")
      ->required();
  enumerate_cmd->add_option("--fail-gate", enumerate.fail_gate,
                            "gate marking failure (default: top)");
  enumerate_cmd->add_option("--recoverable-gates", enumerate.recoverable,
                            "comma-separated gates marking recoverable "
                            "degradation");
  enumerate_cmd->add_option("--exclude", enumerate.exclude,
                            "comma-separated stochastic events held "
                            "not-failed");
  enumerate_cmd->add_option("--format", enumerate.format,
                            "text, json, or csv");
  enumerate_cmd->add_option("--out", enumerate.out_path,
                            "write here (default stdout)");

  // size battery|array|rate
  CLI::App* size_cmd = app.add_subcommand("size", "EPS design calculators");
  size_cmd->require_subcommand(1);

  epsrel::BatterySizingInput battery_input{18.0, 3.6, 20.0, 0.6, 1,
                                           0.9, 3.6, 0.6, 0.3};
  CLI::App* size_battery = size_cmd->add_subcommand(
      "battery", "cell count and capacity from the eclipse load");
  size_battery->set_config("--config");
  size_battery->add_option("--v-line", battery_input.v_line, "line voltage, V");
  size_battery->add_option("--v-cell", battery_input.v_cell,
                           "average cell voltage, V");
  size_battery->add_option("--p-eclipse", battery_input.p_eclipse,
                           "eclipse-phase load, W");
  size_battery->add_option("--t-eclipse", battery_input.t_eclipse,
                           "eclipse duration, h");
  size_battery->add_option("--n-batteries", battery_input.n_batteries,
                           "parallel batteries");
  size_battery->add_option("--eta-discharge", battery_input.eta_discharge,
                           "discharge converter efficiency");
  size_battery->add_option("--v-cell-discharge",
                           battery_input.v_cell_discharge,
                           "average discharge voltage, V");
  size_battery->add_option("--v-drop", battery_input.v_drop,
                           "voltage drop term, V");
  size_battery->add_option("--dod", battery_input.depth_of_discharge,
                           "depth of discharge (0,1]");

  epsrel::ArraySizingInput array_input{0.9, 0.95, 40.0, 60.0, 0.5, 1.0,
                                       16.8, 12.0, 16.0, 2.2, 0.45};
  CLI::App* size_array = size_cmd->add_subcommand(
      "array", "solar-array power, current, and layout");
  size_array->set_config("--config");
  size_array->add_option("--eta-pc", array_input.eta_power_conversion,
                         "power-conversion efficiency");
  size_array->add_option("--eta-pointing", array_input.eta_pointing,
                         "pointing deviation efficiency");
  size_array->add_option("--p-average", array_input.p_average,
                         "average load, W");
  size_array->add_option("--p-peak", array_input.p_peak, "peak load, W");
  size_array->add_option("--t-peak", array_input.t_peak,
                         "peak-demand time, h");
  size_array->add_option("--t-sunlight", array_input.t_sunlight,
                         "sunlight time, h");
  size_array->add_option("--v-max", array_input.v_max,
                         "max battery voltage, V");
  size_array->add_option("--v-min", array_input.v_min,
                         "min battery voltage, V");
  size_array->add_option("--v-bus", array_input.v_bus, "bus voltage, V");
  size_array->add_option("--v-mp-eol", array_input.v_mp_eol,
                         "cell max-power voltage at end of life, V");
  size_array->add_option("--i-mp-eol", array_input.i_mp_eol,
                         "cell max-power current at end of life, A");

  double rate_interval = 0.0;
  long rate_failed = 0;
  long rate_total = 0;
  CLI::App* size_rate = size_cmd->add_subcommand(
      "rate", "empirical fault rate from field counts");
  size_rate->add_option("--interval-hours", rate_interval,
                        "observation interval, h")
      ->required();
  size_rate->add_option("--failed", rate_failed, "failed units")->required();
  size_rate->add_option("--total", rate_total, "total units")->required();

  // components
  std::string component_name;
  CLI::App* components_cmd = app.add_subcommand(
      "components", "show the component fault-rate library");
  components_cmd->add_option("name", component_name,
                             "look up a single component");

  // simulate battery|pv
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "healthy/faulty time-domain simulation");
  simulate_cmd->require_subcommand(1);

  SimBatteryOptions sim_battery;
  CLI::App* sim_battery_cmd = simulate_cmd->add_subcommand(
      "battery", "discharge a battery, optionally with an injected fault");
  sim_battery_cmd->set_config("--config");
  sim_battery_cmd->add_option("--v-full", sim_battery.anchors.v_full,
                              "full-charge voltage, V");
  sim_battery_cmd->add_option("--v-exp", sim_battery.anchors.v_exp,
                              "exponential-zone end voltage, V");
  sim_battery_cmd->add_option("--q-exp", sim_battery.anchors.q_exp,
                              "exponential-zone end charge, Ah");
  sim_battery_cmd->add_option("--v-nom", sim_battery.anchors.v_nom,
                              "nominal voltage, V");
  sim_battery_cmd->add_option("--q-nom", sim_battery.anchors.q_nom,
                              "nominal capacity, Ah");
  sim_battery_cmd->add_option("--q-max", sim_battery.anchors.q_max,
                              "maximum capacity, Ah");
  sim_battery_cmd->add_option("--i-rated", sim_battery.anchors.i_rated,
                              "rated discharge current, A");
  sim_battery_cmd->add_option("--r-int", sim_battery.anchors.r_int,
                              "internal resistance, ohm");
  sim_battery_cmd->add_option("--load-amps", sim_battery.load_amps,
                              "constant discharge current, A");
  sim_battery_cmd->add_option("--dt-seconds", sim_battery.dt_seconds,
                              "time step, s");
  sim_battery_cmd->add_option("--duration-hours", sim_battery.duration_hours,
                              "simulated span, h");
  sim_battery_cmd->add_option(
      "--fault", sim_battery.fault,
      "open-circuit | internal-short[:R] | resistance-growth[:F] | "
      "capacity-fade[:F]");
  sim_battery_cmd->add_option("--onset", sim_battery.onset_hours,
                              "fault onset, h");
  sim_battery_cmd->add_option("--out", sim_battery.out_prefix,
                              "output file prefix");

  SimPvOptions sim_pv;
  sim_pv.params.n_series = 8;
  sim_pv.params.n_parallel = 14;
  CLI::App* sim_pv_cmd = simulate_cmd->add_subcommand(
      "pv", "solar array at its operating point, optionally faulted");
  sim_pv_cmd->set_config("--config");
  sim_pv_cmd->add_option("--i-ph", sim_pv.params.i_ph,
                         "cell photocurrent at full sun, A");
  sim_pv_cmd->add_option("--i-sat", sim_pv.params.i_sat,
                         "diode saturation current, A");
  sim_pv_cmd->add_option("--ideality", sim_pv.params.ideality,
                         "diode ideality factor");
  sim_pv_cmd->add_option("--r-series", sim_pv.params.r_series,
                         "cell series resistance, ohm");
  sim_pv_cmd->add_option("--r-shunt", sim_pv.params.r_shunt,
                         "cell shunt resistance, ohm");
  sim_pv_cmd->add_option("--v-thermal", sim_pv.params.v_thermal,
                         "thermal voltage, V");
  sim_pv_cmd->add_option("--n-series", sim_pv.params.n_series,
                         "series cells per string");
  sim_pv_cmd->add_option("--n-parallel", sim_pv.params.n_parallel,
                         "parallel strings");
  sim_pv_cmd->add_option("--load-ohms", sim_pv.load_ohms,
                         "resistive load (default 3 ohm)");
  sim_pv_cmd->add_option("--bus-volts", sim_pv.bus_volts,
                         "fixed-voltage bus instead of a resistive load");
  sim_pv_cmd->add_option("--dt-seconds", sim_pv.dt_seconds, "time step, s");
  sim_pv_cmd->add_option("--duration-hours", sim_pv.duration_hours,
                         "simulated span, h");
  sim_pv_cmd->add_option("--fault", sim_pv.fault,
                         "ground:S:K | line-line:S:K | mismatch:S:F | "
                         "open-string:S");
  sim_pv_cmd->add_option("--onset", sim_pv.onset_hours, "fault onset, h");
  sim_pv_cmd->add_option("--out", sim_pv.out_prefix, "output file prefix");

  // risk
  std::string risk_items_path;
  std::string risk_format = "text";
  std::string risk_out;
  CLI::App* risk_cmd =
      app.add_subcommand("risk", "classify items into the 5x5 risk matrix");
  risk_cmd->add_option("items", risk_items_path, "risk items file")
      ->required();
  risk_cmd->add_option("--format", risk_format, "text, json, or csv");
  risk_cmd->add_option("--out", risk_out, "write here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze);
    if (*cutsets_cmd) {
      return run_cutsets(cutsets_tree, cutsets_format, cutsets_out,
                         cutsets_no_default);
    }
    if (*enumerate_cmd) return run_enumerate(enumerate);
    if (*size_battery) return run_size_battery(battery_input);
    if (*size_array) return run_size_array(array_input);
    if (*size_rate) return run_size_rate(rate_interval, rate_failed,
                                         rate_total);
    if (*components_cmd) return run_components(component_name);
    if (*sim_battery_cmd) return run_simulate_battery(sim_battery);
    if (*sim_pv_cmd) return run_simulate_pv(sim_pv);
    if (*risk_cmd) return run_risk(risk_items_path, risk_format, risk_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
