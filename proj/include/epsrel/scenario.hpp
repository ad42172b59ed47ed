#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "epsrel/fault_tree.hpp"

namespace epsrel {

/// Names the gate whose truth marks a failed scenario (default: top) and any
/// gates whose truth, short of failure, marks a degraded-but-recoverable
/// scenario.  With no recoverable gates the split is binary survive/fail.
/// `excluded_events` holds stochastic events fixed at not-failed so their
/// combinations are left out of the scan.
struct ScenarioClassifierConfig {
  std::string fail_gate;  // empty = top gate
  std::set<std::string> recoverable_gates;
  std::set<std::string> excluded_events;
};

/// Exhaustive classification of all 2^M stochastic fault combinations.
/// per-m rows are indexed by the number of simultaneous faults.
struct ScenarioStats {
  std::size_t event_count = 0;           // M
  std::uint64_t total = 0;               // N = 2^M
  std::vector<std::uint64_t> survive_m;  // S(m), m = 0..M
  std::vector<std::uint64_t> recover_m;  // R(m)
  std::vector<std::uint64_t> fail_m;     // F(m)
  std::vector<std::string> event_ids;    // the M scanned events

  std::uint64_t survive_total() const;
  std::uint64_t recover_total() const;
  std::uint64_t fail_total() const;
  /// N(m) = C(M, m).
  std::uint64_t combinations(std::size_t m) const;
};

struct ScenarioProbabilities {
  double p_fail = 0.0;  // F/N under uniform scenario weighting
  std::vector<double> p_survive_m;
  std::vector<double> p_recover_m;
  std::vector<double> p_fail_m;
};

inline constexpr std::size_t kMaxEnumerationEvents = 24;

/// Evaluates every subset of the (non-excluded) stochastic events: Fail if
/// the fail gate is true, else Recoverable if any recoverable gate is true,
/// else Survive.  Requires a validated tree and M <= 24.
ScenarioStats enumerate_scenarios(const FaultTree& tree,
                                  const ScenarioClassifierConfig& config = {});

/// Eq-style conditional statistics: P_fail = F/N and per-m fractions
/// X(m)/C(M,m).  Throws InconsistentCounts if the stats rows do not
/// partition the scenario space.
ScenarioProbabilities scenario_probabilities(const ScenarioStats& stats);

}  // namespace epsrel
