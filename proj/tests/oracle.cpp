#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace epsrel::testing {

bool oracle_evaluate(const FaultTree& tree, const std::string& node,
                     const std::set<std::string>& failed) {
  const Node* n = tree.find(node);
  if (const auto* event = std::get_if<EventNode>(n)) {
    switch (event->kind) {
      case EventKind::Basic:
      case EventKind::Undeveloped:
        return failed.count(event->id) > 0;
      case EventKind::House:
      case EventKind::Conditioning:
        return event->state.value_or(true);
    }
  }
  const auto& gate = std::get<GateNode>(*n);
  int trues = 0;
  for (const std::string& input : gate.inputs) {
    if (oracle_evaluate(tree, input, failed)) ++trues;
  }
  bool value = false;
  switch (gate.kind) {
    case GateKind::Or:
      value = trues >= 1;
      break;
    case GateKind::And:
    case GateKind::PriorityAnd:
      value = trues == static_cast<int>(gate.inputs.size());
      break;
    case GateKind::Xor:
      value = trues == 1;
      break;
  }
  if (gate.condition && !oracle_evaluate(tree, *gate.condition, failed)) {
    value = false;
  }
  return value;
}

bool oracle_evaluate(const FaultTree& tree,
                     const std::set<std::string>& failed) {
  return oracle_evaluate(tree, tree.top, failed);
}

std::vector<std::set<std::string>> all_subsets(const FaultTree& tree) {
  const std::vector<std::string> events = tree.stochastic_events();
  const std::size_t m = events.size();
  std::vector<std::set<std::string>> subsets;
  subsets.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::set<std::string> subset;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) subset.insert(events[i]);
    }
    subsets.push_back(std::move(subset));
  }
  return subsets;
}

std::vector<std::set<std::string>> oracle_minimal_cut_sets(
    const FaultTree& tree) {
  std::vector<std::set<std::string>> minimal;
  for (const std::set<std::string>& subset : all_subsets(tree)) {
    if (subset.empty() || !oracle_evaluate(tree, subset)) continue;
    bool is_minimal = true;
    for (const std::string& id : subset) {
      std::set<std::string> reduced = subset;
      reduced.erase(id);
      if (oracle_evaluate(tree, reduced)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.push_back(subset);
  }
  return minimal;
}

double oracle_top_probability(const FaultTree& tree,
                              const std::map<std::string, double>& q) {
  double total = 0.0;
  for (const std::set<std::string>& subset : all_subsets(tree)) {
    if (!oracle_evaluate(tree, subset)) continue;
    double weight = 1.0;
    for (const auto& [id, p] : q) {
      weight *= subset.count(id) ? p : 1.0 - p;
    }
    total += weight;
  }
  return total;
}

namespace {

struct TreeBuilder {
  std::mt19937& rng;
  FaultTree tree;
  int max_events;
  int events_made = 0;
  int gates_made = 0;

  std::string leaf() {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const bool reuse =
        events_made > 0 &&
        (events_made >= max_events || coin(rng) < 0.3);
    if (reuse) {
      std::uniform_int_distribution<int> pick(0, events_made - 1);
      return "E" + std::to_string(pick(rng));
    }
    EventNode event;
    event.id = "E" + std::to_string(events_made++);
    event.kind = coin(rng) < 0.9 ? EventKind::Basic : EventKind::Undeveloped;
    const std::string id = event.id;
    tree.add(std::move(event));
    return id;
  }

  std::string grow(int depth) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (depth <= 0 || (depth < 4 && coin(rng) < 0.35)) return leaf();
    GateNode gate;
    gate.id = "G" + std::to_string(gates_made++);
    gate.kind = coin(rng) < 0.5 ? GateKind::Or : GateKind::And;
    std::uniform_int_distribution<int> fan(2, 4);
    const int inputs = fan(rng);
    for (int i = 0; i < inputs; ++i) {
      gate.inputs.push_back(grow(depth - 1));
    }
    // Duplicate inputs on one gate are legal but pointless; drop them.
    std::sort(gate.inputs.begin(), gate.inputs.end());
    gate.inputs.erase(std::unique(gate.inputs.begin(), gate.inputs.end()),
                      gate.inputs.end());
    const std::string id = gate.id;
    tree.add(std::move(gate));
    return id;
  }
};

}  // namespace

FaultTree random_coherent_tree(std::mt19937& rng, int max_events,
                               int max_depth) {
  TreeBuilder builder{rng, {}, max_events};
  // Top is always a gate.
  GateNode top;
  top.id = "TOP";
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  top.kind = coin(rng) < 0.6 ? GateKind::Or : GateKind::And;
  std::uniform_int_distribution<int> fan(2, 4);
  const int inputs = fan(rng);
  for (int i = 0; i < inputs; ++i) {
    top.inputs.push_back(builder.grow(max_depth - 1));
  }
  std::sort(top.inputs.begin(), top.inputs.end());
  top.inputs.erase(std::unique(top.inputs.begin(), top.inputs.end()),
                   top.inputs.end());
  builder.tree.add(std::move(top));
  builder.tree.top = "TOP";
  return validate_tree(builder.tree);
}

std::map<std::string, double> random_probabilities(const FaultTree& tree,
                                                   std::mt19937& rng,
                                                   double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::map<std::string, double> q;
  for (const std::string& id : tree.stochastic_events()) {
    q[id] = dist(rng);
  }
  return q;
}

TreeDocument random_tree_document(std::mt19937& rng) {
  const FaultTree tree = random_coherent_tree(rng, 10, 4);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> rate(1e-9, 1e-4);
  std::uniform_real_distribution<double> prob(0.0, 1.0);

  TreeDocument doc;
  doc.top = tree.top;
  const char* words[] = {"bus", "battery", "switch", "array", "regulator",
                         "harness", "sensor", "converter"};
  for (const Node& node : tree.nodes) {
    if (const auto* event = std::get_if<EventNode>(&node)) {
      EventDef def;
      def.id = event->id;
      def.kind = event->kind;
      def.description =
          std::string(words[rng() % 8]) + " " + std::to_string(rng() % 100);
      const double pick = coin(rng);
      if (pick < 0.4) {
        def.model = FailureRateOnly{rate(rng)};
      } else if (pick < 0.8) {
        def.model = FailureWithRepair{rate(rng), rate(rng) * 100};
      } else {
        def.model = ConstantProbability{prob(rng)};
      }
      doc.events.push_back(std::move(def));
    } else {
      const auto& gate = std::get<GateNode>(node);
      GateDef def;
      def.id = gate.id;
      def.kind = gate.kind;
      def.inputs = gate.inputs;
      doc.gates.push_back(std::move(def));
    }
  }
  return doc;
}

}  // namespace epsrel::testing
