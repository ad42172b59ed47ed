#include "epsrel/io/report.hpp"

#include <cmath>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace epsrel {

namespace {

using nlohmann::json;

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteResult,
                std::string(field) + " is not finite");
  }
}

void check_report(const ReportDocument& doc) {
  require_finite(doc.quant.failure_rate_predicted, "failure_rate_predicted");
  require_finite(doc.quant.reliability_predicted, "reliability_predicted");
  require_finite(doc.quant.availability, "availability");
  require_finite(doc.quant.failure_rate_mission, "failure_rate_mission");
  require_finite(doc.quant.reliability_mission, "reliability_mission");
  require_finite(doc.quant.availability_mission, "availability_mission");
  if (doc.provenance.input_hash.empty() ||
      doc.provenance.tool_version.empty()) {
    throw Error(ErrorCode::SchemaViolation,
                "report provenance block is mandatory");
  }
}

std::string fixed6(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << value;
  return out.str();
}

json scenario_json(const ScenarioStats& stats) {
  const ScenarioProbabilities probs = scenario_probabilities(stats);
  json rows = json::array();
  for (std::size_t m = 0; m <= stats.event_count; ++m) {
    rows.push_back({{"m", m},
                    {"n_m", stats.combinations(m)},
                    {"s_m", stats.survive_m[m]},
                    {"r_m", stats.recover_m[m]},
                    {"f_m", stats.fail_m[m]},
                    {"p_fail_m", probs.p_fail_m[m]}});
  }
  return {{"event_count", stats.event_count},
          {"total", stats.total},
          {"survive", stats.survive_total()},
          {"recover", stats.recover_total()},
          {"fail", stats.fail_total()},
          {"p_fail_uniform", probs.p_fail},
          {"rows", rows}};
}

json cut_sets_json(const CutSetList& sets) {
  json out = json::array();
  for (const CutSet& cs : sets) {
    out.push_back({{"size", cs.size()}, {"events", cs.events}});
  }
  return out;
}

json risk_json(const RiskMatrix& matrix) {
  json cells = json::array();
  for (const RiskCell& cell : matrix.cells) {
    cells.push_back({{"likelihood", cell.likelihood},
                     {"severity", cell.severity},
                     {"color", std::string(to_string(cell.color))},
                     {"count", cell.count}});
  }
  return {{"cells", cells}, {"items", matrix.items.size()}};
}

void text_quant_rows(std::ostream& out, const QuantResult& q) {
  const struct {
    const char* label;
    double value;
  } rows[] = {
      {"Failure Rate, Predicted", q.failure_rate_predicted},
      {"Reliability, Predicted", q.reliability_predicted},
      {"Availability", q.availability},
      {"Failure Rate, Mission", q.failure_rate_mission},
      {"Reliability, Mission", q.reliability_mission},
      {"Availability, Mission", q.availability_mission},
  };
  for (const auto& row : rows) {
    out << "  " << std::left << std::setw(26) << row.label << ' '
        << fixed6(row.value) << '\n';
  }
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  check_report(doc);
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "analysis report\n";
    out << "  input: " << doc.provenance.input_path << " (fnv1a64 "
        << doc.provenance.input_hash << ")\n";
    out << "  tool: " << doc.provenance.tool_version;
    if (!doc.provenance.timestamp.empty()) {
      out << ", generated " << doc.provenance.timestamp;
    }
    out << "\n  mission: " << doc.mission_hours << " h, method: "
        << doc.method << "\n\n";
    text_quant_rows(out, doc.quant);
    out << '\n' << emit_cut_sets(doc.cut_sets, ReportFormat::Text);
    if (doc.scenario) {
      out << '\n' << emit_scenario_table(*doc.scenario, ReportFormat::Text);
    }
    if (!doc.reliability_curve.empty()) {
      out << "\nreliability over time:\n";
      for (const auto& [t, r] : doc.reliability_curve) {
        out << "  t=" << t << " h  R=" << fixed6(r) << '\n';
      }
    }
    if (doc.risk) {
      out << '\n' << render_risk_matrix(*doc.risk);
    }
    return out.str();
  }

  if (format == ReportFormat::Structured) {
    json root = {
        {"failure_rate_predicted", doc.quant.failure_rate_predicted},
        {"reliability_predicted", doc.quant.reliability_predicted},
        {"availability", doc.quant.availability},
        {"failure_rate_mission", doc.quant.failure_rate_mission},
        {"reliability_mission", doc.quant.reliability_mission},
        {"availability_mission", doc.quant.availability_mission},
        {"mission_hours", doc.mission_hours},
        {"method", doc.method},
        {"cut_sets", cut_sets_json(doc.cut_sets)},
        {"provenance",
         {{"input_path", doc.provenance.input_path},
          {"input_hash", doc.provenance.input_hash},
          {"tool_version", doc.provenance.tool_version},
          {"timestamp", doc.provenance.timestamp}}},
    };
    if (doc.scenario) root["scenario"] = scenario_json(*doc.scenario);
    if (!doc.reliability_curve.empty()) {
      json curve = json::array();
      for (const auto& [t, r] : doc.reliability_curve) {
        curve.push_back({{"t_hours", t}, {"reliability", r}});
      }
      root["reliability_curve"] = curve;
    }
    if (doc.risk) root["risk_matrix"] = risk_json(*doc.risk);
    return root.dump(2) + "\n";
  }

  // CSV: the scenario table, with the quantification values up front as
  // comment rows.
  std::ostringstream out;
  out << "# report csv, mission_hours=" << doc.mission_hours
      << ", method=" << doc.method << '\n';
  out << "# failure_rate_predicted," << fixed6(doc.quant.failure_rate_predicted)
      << '\n';
  out << "# reliability_predicted," << fixed6(doc.quant.reliability_predicted)
      << '\n';
  out << "# availability," << fixed6(doc.quant.availability) << '\n';
  out << "# failure_rate_mission," << fixed6(doc.quant.failure_rate_mission)
      << '\n';
  out << "# reliability_mission," << fixed6(doc.quant.reliability_mission)
      << '\n';
  out << "# availability_mission," << fixed6(doc.quant.availability_mission)
      << '\n';
  if (doc.scenario) {
    out << emit_scenario_table(*doc.scenario, ReportFormat::Csv);
  }
  return out.str();
}

std::string emit_cut_sets(const CutSetList& sets, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "minimal cut sets (" << sets.size() << "):\n";
    for (const CutSet& cs : sets) {
      out << "  [" << cs.size() << "] {";
      for (std::size_t i = 0; i < cs.events.size(); ++i) {
        if (i) out << ", ";
        out << cs.events[i];
      }
      out << "}\n";
    }
    return out.str();
  }
  if (format == ReportFormat::Structured) {
    return cut_sets_json(sets).dump(2) + "\n";
  }
  std::ostringstream out;
  out << "size,events\n";
  for (const CutSet& cs : sets) {
    out << cs.size() << ',';
    for (std::size_t i = 0; i < cs.events.size(); ++i) {
      if (i) out << ' ';
      out << cs.events[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_scenario_table(const ScenarioStats& stats,
                                ReportFormat format) {
  const ScenarioProbabilities probs = scenario_probabilities(stats);
  if (format == ReportFormat::Structured) {
    return scenario_json(stats).dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ReportFormat::Text) {
    out << "scenario enumeration: M=" << stats.event_count << ", N="
        << stats.total << ", survive=" << stats.survive_total()
        << ", recoverable=" << stats.recover_total() << ", fail="
        << stats.fail_total() << ", P(fail)=" << fixed6(probs.p_fail) << '\n';
    out << "  m      N(m)      S(m)      R(m)      F(m)    P_m(F)\n";
    for (std::size_t m = 0; m <= stats.event_count; ++m) {
      out << std::setw(3) << m << std::setw(10) << stats.combinations(m)
          << std::setw(10) << stats.survive_m[m] << std::setw(10)
          << stats.recover_m[m] << std::setw(10) << stats.fail_m[m]
          << std::setw(10) << fixed6(probs.p_fail_m[m]) << '\n';
    }
    return out.str();
  }
  out << "m,n_m,s_m,r_m,f_m,p_fail_m\n";
  for (std::size_t m = 0; m <= stats.event_count; ++m) {
    out << m << ',' << stats.combinations(m) << ',' << stats.survive_m[m]
        << ',' << stats.recover_m[m] << ',' << stats.fail_m[m] << ','
        << fixed6(probs.p_fail_m[m]) << '\n';
  }
  return out.str();
}

std::string emit_risk_matrix(const RiskMatrix& matrix, ReportFormat format) {
  if (format == ReportFormat::Structured) {
    return risk_json(matrix).dump(2) + "\n";
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "likelihood,severity,color,count\n";
    for (const RiskCell& cell : matrix.cells) {
      out << cell.likelihood << ',' << cell.severity << ','
          << to_string(cell.color) << ',' << cell.count << '\n';
    }
    return out.str();
  }
  return render_risk_matrix(matrix);
}

}  // namespace epsrel
