#include "epsrel/scenario.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace epsrel {

namespace {

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

}  // namespace

std::uint64_t ScenarioStats::survive_total() const { return sum(survive_m); }
std::uint64_t ScenarioStats::recover_total() const { return sum(recover_m); }
std::uint64_t ScenarioStats::fail_total() const { return sum(fail_m); }

std::uint64_t ScenarioStats::combinations(std::size_t m) const {
  if (m > event_count) return 0;
  // C(M, m) fits comfortably in 64 bits for M <= 24.
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < m; ++i) {
    c = c * (event_count - i) / (i + 1);
  }
  return c;
}

ScenarioStats enumerate_scenarios(const FaultTree& tree,
                                  const ScenarioClassifierConfig& config) {
  CompiledTree compiled(tree);

  const std::string fail_id = config.fail_gate.empty() ? tree.top
                                                       : config.fail_gate;
  auto fail_slot = compiled.slot_of(fail_id);
  if (!fail_slot || tree.find_gate(fail_id) == nullptr) {
    throw Error(ErrorCode::BadClassifier,
                "fail gate \"" + fail_id + "\" does not name a gate");
  }
  std::vector<std::size_t> recover_slots;
  for (const std::string& id : config.recoverable_gates) {
    auto slot = compiled.slot_of(id);
    if (!slot || tree.find_gate(id) == nullptr) {
      throw Error(ErrorCode::BadClassifier,
                  "recoverable gate \"" + id + "\" does not name a gate");
    }
    recover_slots.push_back(*slot);
  }

  // Scanned events = stochastic events minus exclusions (held not-failed).
  std::vector<std::size_t> scan_bits;
  std::vector<std::string> scan_ids;
  for (const std::string& id : compiled.stochastic_ids()) {
    if (config.excluded_events.contains(id)) continue;
    scan_bits.push_back(*compiled.bit_of(id));
    scan_ids.push_back(id);
  }
  for (const std::string& id : config.excluded_events) {
    if (!compiled.bit_of(id)) {
      throw Error(ErrorCode::BadClassifier,
                  "excluded id \"" + id + "\" is not a stochastic event");
    }
  }

  const std::size_t m_count = scan_bits.size();
  if (m_count > kMaxEnumerationEvents) {
    throw Error(ErrorCode::TooManyEvents,
                std::to_string(m_count) +
                    " stochastic events exceed the enumeration cap of " +
                    std::to_string(kMaxEnumerationEvents));
  }

  ScenarioStats stats;
  stats.event_count = m_count;
  stats.total = std::uint64_t{1} << m_count;
  stats.survive_m.assign(m_count + 1, 0);
  stats.recover_m.assign(m_count + 1, 0);
  stats.fail_m.assign(m_count + 1, 0);
  stats.event_ids = scan_ids;

  CompiledTree::Scratch scratch = compiled.make_scratch();
  for (std::uint64_t subset = 0; subset < stats.total; ++subset) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < m_count; ++i) {
      if ((subset >> i) & 1u) mask |= 1u << scan_bits[i];
    }
    compiled.evaluate_all(mask, scratch);
    const std::size_t m = static_cast<std::size_t>(std::popcount(subset));
    if (scratch[*fail_slot]) {
      ++stats.fail_m[m];
    } else if (std::any_of(recover_slots.begin(), recover_slots.end(),
                           [&](std::size_t s) { return scratch[s] != 0; })) {
      ++stats.recover_m[m];
    } else {
      ++stats.survive_m[m];
    }
  }
  return stats;
}

ScenarioProbabilities scenario_probabilities(const ScenarioStats& stats) {
  const std::size_t m_max = stats.event_count;
  if (stats.survive_m.size() != m_max + 1 ||
      stats.recover_m.size() != m_max + 1 || stats.fail_m.size() != m_max + 1) {
    throw Error(ErrorCode::InconsistentCounts, "per-m rows misshapen");
  }
  if (stats.total != std::uint64_t{1} << m_max) {
    throw Error(ErrorCode::InconsistentCounts, "N != 2^M");
  }
  std::uint64_t partitioned = 0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    const std::uint64_t row =
        stats.survive_m[m] + stats.recover_m[m] + stats.fail_m[m];
    if (row != stats.combinations(m)) {
      throw Error(ErrorCode::InconsistentCounts,
                  "S(m)+R(m)+F(m) != C(M,m) at m=" + std::to_string(m));
    }
    partitioned += row;
  }
  if (partitioned != stats.total) {
    throw Error(ErrorCode::InconsistentCounts, "classes do not partition N");
  }

  ScenarioProbabilities out;
  out.p_fail = static_cast<double>(stats.fail_total()) /
               static_cast<double>(stats.total);
  out.p_survive_m.resize(m_max + 1);
  out.p_recover_m.resize(m_max + 1);
  out.p_fail_m.resize(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double n_m = static_cast<double>(stats.combinations(m));
    out.p_survive_m[m] = static_cast<double>(stats.survive_m[m]) / n_m;
    out.p_recover_m[m] = static_cast<double>(stats.recover_m[m]) / n_m;
    out.p_fail_m[m] = static_cast<double>(stats.fail_m[m]) / n_m;
  }
  return out;
}

}  // namespace epsrel
