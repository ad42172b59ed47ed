#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "epsrel/cut_sets.hpp"
#include "epsrel/fault_tree.hpp"

namespace epsrel {

/// Time-independent probability of being in the failed state.
struct ConstantProbability {
  double q = 0.0;
  bool operator==(const ConstantProbability&) const = default;
};

/// Exponential failure law, no repair.
struct FailureRateOnly {
  double lambda = 0.0;  // failures per hour
  bool operator==(const FailureRateOnly&) const = default;
};

/// Exponential failure and repair (two-state Markov item).
struct FailureWithRepair {
  double lambda = 0.0;  // failures per hour
  double mu = 0.0;      // repairs per hour
  bool operator==(const FailureWithRepair&) const = default;
};

using ProbabilityModel =
    std::variant<ConstantProbability, FailureRateOnly, FailureWithRepair>;

/// Stochastic event id -> its probability model.
using ModelMap = std::map<std::string, ProbabilityModel>;

struct MissionProfile {
  double mission_hours = 0.0;
  std::vector<double> time_grid;  // optional ascending instants in hours
};

/// The six output quantities of a mission quantification, in report row
/// order.  Failure rates are in failures per 1e6 hours.
struct QuantResult {
  double failure_rate_predicted = 0.0;
  double reliability_predicted = 1.0;
  double availability = 1.0;
  double failure_rate_mission = 0.0;
  double reliability_mission = 1.0;
  double availability_mission = 1.0;
};

enum class QuantMethod { Exact, RareEvent };

/// Exact enumeration is capped at 2^20 assignments.
inline constexpr std::size_t kMaxExactEvents = 20;

/// Throws BadProbability unless q in [0,1] and rates are >= 0 and finite.
void validate_model(const ProbabilityModel& model, const std::string& id);

/// Probability the item is in the failed state at time t:
/// ConstantProbability -> q; FailureRateOnly -> 1 - exp(-lambda t);
/// FailureWithRepair -> (lambda/(lambda+mu))(1 - exp(-(lambda+mu) t)).
double event_unreliability(const ProbabilityModel& model, double t_hours);

/// Long-run unavailability: q for constant, lambda/(lambda+mu) with repair,
/// and 1 for an unrepaired item with lambda > 0.
double steady_state_unavailability(const ProbabilityModel& model);

/// Failure rate of the model; constant-probability events have none.
double model_lambda(const ProbabilityModel& model);

/// Top-event probability with explicit per-event probabilities.
/// Exact: sums P(assignment) over all 2^M failed-set assignments that set
/// the top event, in fixed assignment-index order (deterministic).
/// RareEvent: sum over minimal cut sets of the product of event
/// probabilities.
double top_probability_with(const FaultTree& tree,
                            const std::map<std::string, double>& q,
                            QuantMethod method);

/// Same, with q_i = event_unreliability(models[i], t).
double top_probability(const FaultTree& tree, const ModelMap& models,
                       double t_hours, QuantMethod method);

/// Mission-level roll-up:
///  - reliability_mission: 1 - top probability with first-failure
///    probabilities q_i = 1 - exp(-lambda_i T) (repair ignored);
///  - availability / availability_mission: 1 - top probability with
///    steady-state unavailabilities;
///  - failure_rate_mission: -ln(reliability_mission)/T * 1e6;
///  - failure_rate_predicted: cut-set rate sum(cs) sum(j in cs) lambda_j *
///    prod(k!=j) q_k * 1e6 with steady-state q (singletons reduce to
///    lambda_i * 1e6);
///  - reliability_predicted: exp(-failure_rate_predicted/1e6 * T), the
///    constant-rate reliability implied by the predicted rate.
QuantResult quantify_mission(const FaultTree& tree, const ModelMap& models,
                             const MissionProfile& profile,
                             QuantMethod method = QuantMethod::Exact);

/// (t, mission reliability up to t) over the profile's time grid.
std::vector<std::pair<double, double>> reliability_curve(
    const FaultTree& tree, const ModelMap& models,
    const MissionProfile& profile, QuantMethod method = QuantMethod::Exact);

}  // namespace epsrel
