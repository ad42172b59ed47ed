#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsrel/cut_sets.hpp"
#include "epsrel/quant.hpp"
#include "epsrel/risk_matrix.hpp"
#include "epsrel/scenario.hpp"

namespace epsrel {

/// Where a report came from; always attached so results stay traceable.
/// The timestamp may be suppressed for byte-identical reruns.
struct Provenance {
  std::string input_path;
  std::string input_hash;  // fnv1a64 over the input file bytes
  std::string tool_version;
  std::string timestamp;  // ISO 8601 UTC, empty when suppressed
};

struct ReportDocument {
  double mission_hours = 0.0;
  std::string method;  // "exact" or "rare-event"
  QuantResult quant;
  CutSetList cut_sets;
  std::optional<ScenarioStats> scenario;  // absent when M exceeds the cap
  std::vector<std::pair<double, double>> reliability_curve;
  std::optional<RiskMatrix> risk;
  Provenance provenance;
};

enum class ReportFormat { Text, Structured, Csv };

/// 64-bit FNV-1a, hex encoded; used for provenance and params hashes.
std::string fnv1a64_hex(const std::string& bytes);

/// Current wall clock as ISO 8601 UTC.
std::string iso8601_utc_now();

/// Renders the report.  Text puts the six quantification values in fixed
/// row order (Failure Rate Predicted, Reliability Predicted, Availability,
/// Failure Rate Mission, Reliability Mission, Availability Mission);
/// structured output is JSON with sorted keys; CSV carries the scenario
/// table with the quantification values as comment rows.  Throws
/// NonFiniteResult if any numeric field is not finite.
std::string emit_report(const ReportDocument& doc, ReportFormat format);

/// Cut-set listing by itself: text (one set per line), JSON records, or CSV
/// rows (size, space-joined event ids).
std::string emit_cut_sets(const CutSetList& sets, ReportFormat format);

/// Scenario table by itself: columns m, N(m), S(m), R(m), F(m), P_m(F).
std::string emit_scenario_table(const ScenarioStats& stats,
                                ReportFormat format);

/// Risk matrix: text grid or JSON cells.
std::string emit_risk_matrix(const RiskMatrix& matrix, ReportFormat format);

}  // namespace epsrel
