#include "epsrel/quant.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace epsrel {

namespace {

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0 && x <= 1; }

// Per-event probabilities in compiled bit order, checking MissingModel and
// range on the way.
std::vector<double> probabilities_in_bit_order(
    const CompiledTree& compiled, const std::map<std::string, double>& q) {
  std::vector<double> out;
  out.reserve(compiled.stochastic_count());
  for (const std::string& id : compiled.stochastic_ids()) {
    auto it = q.find(id);
    if (it == q.end()) {
      throw Error(ErrorCode::MissingModel,
                  "no probability for stochastic event \"" + id + "\"");
    }
    if (!in_unit_interval(it->second)) {
      throw Error(ErrorCode::BadProbability,
                  "probability of \"" + id + "\" outside [0,1]");
    }
    out.push_back(it->second);
  }
  return out;
}

double exact_top_probability(const FaultTree& tree,
                             const std::map<std::string, double>& q) {
  CompiledTree compiled(tree);
  const std::size_t m = compiled.stochastic_count();
  if (m > kMaxExactEvents) {
    throw Error(ErrorCode::TooManyEventsForExact,
                std::to_string(m) + " stochastic events exceed the exact "
                                    "method cap of " +
                    std::to_string(kMaxExactEvents) +
                    "; use the rare-event method");
  }
  std::vector<double> p = probabilities_in_bit_order(compiled, q);
  CompiledTree::Scratch scratch = compiled.make_scratch();
  const std::uint32_t n = 1u << m;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    if (!compiled.top_value(mask, scratch)) continue;
    double weight = 1.0;
    for (std::size_t bit = 0; bit < m; ++bit) {
      weight *= ((mask >> bit) & 1u) ? p[bit] : 1.0 - p[bit];
    }
    total += weight;
  }
  return total;
}

double rare_event_top_probability(const FaultTree& tree,
                                  const std::map<std::string, double>& q) {
  double total = 0.0;
  for (const CutSet& cs : minimal_cut_sets(tree)) {
    double product = 1.0;
    for (const std::string& id : cs.events) {
      auto it = q.find(id);
      if (it == q.end()) {
        throw Error(ErrorCode::MissingModel,
                    "no probability for stochastic event \"" + id + "\"");
      }
      if (!in_unit_interval(it->second)) {
        throw Error(ErrorCode::BadProbability,
                    "probability of \"" + id + "\" outside [0,1]");
      }
      product *= it->second;
    }
    total += product;
  }
  return total;
}

}  // namespace

void validate_model(const ProbabilityModel& model, const std::string& id) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProbability>) {
          if (!in_unit_interval(m.q)) {
            throw Error(ErrorCode::BadProbability,
                        "constant probability of \"" + id + "\" not in [0,1]");
          }
        } else if constexpr (std::is_same_v<T, FailureRateOnly>) {
          if (!std::isfinite(m.lambda) || m.lambda < 0) {
            throw Error(ErrorCode::BadProbability,
                        "failure rate of \"" + id + "\" must be >= 0");
          }
        } else {
          if (!std::isfinite(m.lambda) || m.lambda < 0 ||
              !std::isfinite(m.mu) || m.mu < 0) {
            throw Error(ErrorCode::BadProbability,
                        "failure/repair rates of \"" + id +
                            "\" must be >= 0");
          }
        }
      },
      model);
}

double event_unreliability(const ProbabilityModel& model, double t_hours) {
  if (!(t_hours >= 0)) {
    throw Error(ErrorCode::NegativeTime, "time must be >= 0 hours");
  }
  return std::visit(
      [t_hours](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProbability>) {
          return m.q;
        } else if constexpr (std::is_same_v<T, FailureRateOnly>) {
          return -std::expm1(-m.lambda * t_hours);
        } else {
          const double rate = m.lambda + m.mu;
          if (rate <= 0) return 0.0;
          return m.lambda / rate * -std::expm1(-rate * t_hours);
        }
      },
      model);
}

double steady_state_unavailability(const ProbabilityModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProbability>) {
          return m.q;
        } else if constexpr (std::is_same_v<T, FailureRateOnly>) {
          return m.lambda > 0 ? 1.0 : 0.0;
        } else {
          const double rate = m.lambda + m.mu;
          return rate > 0 ? m.lambda / rate : 0.0;
        }
      },
      model);
}

double model_lambda(const ProbabilityModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProbability>) {
          return 0.0;
        } else {
          return m.lambda;
        }
      },
      model);
}

double top_probability_with(const FaultTree& tree,
                            const std::map<std::string, double>& q,
                            QuantMethod method) {
  return method == QuantMethod::Exact ? exact_top_probability(tree, q)
                                      : rare_event_top_probability(tree, q);
}

namespace {

std::map<std::string, double> q_at_time(const FaultTree& tree,
                                        const ModelMap& models,
                                        double t_hours) {
  std::map<std::string, double> q;
  for (const std::string& id : tree.stochastic_events()) {
    auto it = models.find(id);
    if (it == models.end()) {
      throw Error(ErrorCode::MissingModel,
                  "no probability model for event \"" + id + "\"");
    }
    validate_model(it->second, id);
    q[id] = event_unreliability(it->second, t_hours);
  }
  return q;
}

// First-failure probability over [0, T]: repair ignored.
double mission_unreliability(const ProbabilityModel& model, double t_hours) {
  return std::visit(
      [t_hours](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProbability>) {
          return m.q;
        } else {
          return -std::expm1(-m.lambda * t_hours);
        }
      },
      model);
}

std::map<std::string, double> q_flavored(
    const FaultTree& tree, const ModelMap& models,
    const std::function<double(const ProbabilityModel&)>& flavor) {
  std::map<std::string, double> q;
  for (const std::string& id : tree.stochastic_events()) {
    auto it = models.find(id);
    if (it == models.end()) {
      throw Error(ErrorCode::MissingModel,
                  "no probability model for event \"" + id + "\"");
    }
    validate_model(it->second, id);
    q[id] = flavor(it->second);
  }
  return q;
}

}  // namespace

double top_probability(const FaultTree& tree, const ModelMap& models,
                       double t_hours, QuantMethod method) {
  return top_probability_with(tree, q_at_time(tree, models, t_hours), method);
}

QuantResult quantify_mission(const FaultTree& tree, const ModelMap& models,
                             const MissionProfile& profile,
                             QuantMethod method) {
  if (!(profile.mission_hours > 0)) {
    throw Error(ErrorCode::NonPositiveInterval, "mission time must be > 0");
  }
  const double T = profile.mission_hours;

  auto q_rel = q_flavored(tree, models, [T](const ProbabilityModel& m) {
    return mission_unreliability(m, T);
  });
  auto q_av = q_flavored(tree, models, steady_state_unavailability);

  QuantResult result;
  result.reliability_mission = 1.0 - top_probability_with(tree, q_rel, method);
  const double unavailability = top_probability_with(tree, q_av, method);
  result.availability = 1.0 - unavailability;
  result.availability_mission = result.availability;

  result.failure_rate_mission =
      result.reliability_mission > 0
          ? -std::log(result.reliability_mission) / T * 1e6
          : std::numeric_limits<double>::infinity();

  // Cut-set failure frequency with steady-state unavailabilities.
  double rate = 0.0;
  for (const CutSet& cs : minimal_cut_sets(tree)) {
    for (const std::string& j : cs.events) {
      double term = model_lambda(models.at(j));
      for (const std::string& k : cs.events) {
        if (k != j) term *= q_av.at(k);
      }
      rate += term;
    }
  }
  result.failure_rate_predicted = rate * 1e6;
  result.reliability_predicted = std::exp(-rate * T);
  return result;
}

std::vector<std::pair<double, double>> reliability_curve(
    const FaultTree& tree, const ModelMap& models,
    const MissionProfile& profile, QuantMethod method) {
  std::vector<std::pair<double, double>> curve;
  double previous = -1.0;
  for (double t : profile.time_grid) {
    if (!(t >= 0) || t > profile.mission_hours || t <= previous) {
      throw Error(ErrorCode::OutOfRange,
                  "time grid must ascend strictly within [0, mission]");
    }
    previous = t;
    auto q = q_flavored(tree, models, [t](const ProbabilityModel& m) {
      return mission_unreliability(m, t);
    });
    curve.emplace_back(t, 1.0 - top_probability_with(tree, q, method));
  }
  return curve;
}

}  // namespace epsrel
