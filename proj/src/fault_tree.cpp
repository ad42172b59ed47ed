#include "epsrel/fault_tree.hpp"

#include <algorithm>
#include <sstream>

namespace epsrel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CyclicTree: return "CyclicTree";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyGate: return "EmptyGate";
    case ErrorCode::XorArityBelowTwo: return "XorArityBelowTwo";
    case ErrorCode::PriorityAndArityBelowTwo: return "PriorityAndArityBelowTwo";
    case ErrorCode::TopIsNotGate: return "TopIsNotGate";
    case ErrorCode::BadHouseState: return "BadHouseState";
    case ErrorCode::BadCondition: return "BadCondition";
    case ErrorCode::UnreachableNode: return "UnreachableNode";
    case ErrorCode::TautologicalTree: return "TautologicalTree";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::NonCoherentTree: return "NonCoherentTree";
    case ErrorCode::MissingModel: return "MissingModel";
    case ErrorCode::TooManyEventsForExact: return "TooManyEventsForExact";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::TooManyEvents: return "TooManyEvents";
    case ErrorCode::BadClassifier: return "BadClassifier";
    case ErrorCode::InconsistentCounts: return "InconsistentCounts";
    case ErrorCode::NonPositiveVoltage: return "NonPositiveVoltage";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NonPositiveEfficiency: return "NonPositiveEfficiency";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::BadCounts: return "BadCounts";
    case ErrorCode::NonPositiveInterval: return "NonPositiveInterval";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::NonMonotoneAnchors: return "NonMonotoneAnchors";
    case ErrorCode::BadStep: return "BadStep";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadThresholds: return "BadThresholds";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

std::string ValidationError::Render(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (const Violation& v : violations) {
    out << "\n  " << to_string(v.code) << ": " << v.detail;
  }
  return out.str();
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Basic: return "basic";
    case EventKind::House: return "house";
    case EventKind::Undeveloped: return "undeveloped";
    case EventKind::Conditioning: return "conditioning";
  }
  return "?";
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Or: return "or";
    case GateKind::And: return "and";
    case GateKind::Xor: return "xor";
    case GateKind::PriorityAnd: return "priority-and";
  }
  return "?";
}

const std::string& node_id(const Node& node) {
  return std::visit([](const auto& n) -> const std::string& { return n.id; },
                    node);
}

const Node* FaultTree::find(const std::string& id) const {
  for (const Node& node : nodes) {
    if (node_id(node) == id) return &node;
  }
  return nullptr;
}

const EventNode* FaultTree::find_event(const std::string& id) const {
  const Node* node = find(id);
  return node ? std::get_if<EventNode>(node) : nullptr;
}

const GateNode* FaultTree::find_gate(const std::string& id) const {
  const Node* node = find(id);
  return node ? std::get_if<GateNode>(node) : nullptr;
}

std::vector<std::string> FaultTree::stochastic_events() const {
  std::vector<std::string> ids;
  for (const Node& node : nodes) {
    if (const auto* event = std::get_if<EventNode>(&node)) {
      if (event->stochastic()) ids.push_back(event->id);
    }
  }
  return ids;
}

std::size_t FaultTree::gate_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) {
        return std::holds_alternative<GateNode>(n);
      }));
}

std::size_t FaultTree::event_count() const {
  return nodes.size() - gate_count();
}

namespace {

// Depth-first cycle check over gate inputs and conditions.
enum class Mark { Unseen, Active, Done };

bool has_cycle(const FaultTree& tree, const std::string& id,
               std::map<std::string, Mark>& marks) {
  Mark& mark = marks[id];
  if (mark == Mark::Active) return true;
  if (mark == Mark::Done) return false;
  mark = Mark::Active;
  if (const GateNode* gate = tree.find_gate(id)) {
    for (const std::string& input : gate->inputs) {
      if (tree.find(input) && has_cycle(tree, input, marks)) return true;
    }
    if (gate->condition && tree.find(*gate->condition) &&
        has_cycle(tree, *gate->condition, marks)) {
      return true;
    }
  }
  marks[id] = Mark::Done;
  return false;
}

void reach(const FaultTree& tree, const std::string& id,
           std::set<std::string>& reached) {
  if (!reached.insert(id).second) return;
  if (const GateNode* gate = tree.find_gate(id)) {
    for (const std::string& input : gate->inputs) reach(tree, input, reached);
    if (gate->condition) reach(tree, *gate->condition, reached);
  }
}

}  // namespace

std::vector<Violation> check_tree(const FaultTree& tree) {
  std::vector<Violation> out;
  auto flag = [&out](ErrorCode code, std::string detail) {
    out.push_back({code, std::move(detail)});
  };

  std::set<std::string> seen;
  for (const Node& node : tree.nodes) {
    if (!seen.insert(node_id(node)).second) {
      flag(ErrorCode::DuplicateId, "id \"" + node_id(node) + "\" defined twice");
    }
  }

  if (tree.find_gate(tree.top) == nullptr) {
    flag(ErrorCode::TopIsNotGate,
         "top \"" + tree.top + "\" does not name a gate");
  }

  for (const Node& node : tree.nodes) {
    if (const auto* event = std::get_if<EventNode>(&node)) {
      if (event->kind == EventKind::House && !event->state) {
        flag(ErrorCode::BadHouseState,
             "house event \"" + event->id + "\" has no state");
      }
      if (event->state && event->kind != EventKind::House &&
          event->kind != EventKind::Conditioning) {
        flag(ErrorCode::BadHouseState,
             "state set on non-deterministic event \"" + event->id + "\"");
      }
      continue;
    }
    const auto& gate = std::get<GateNode>(node);
    if (gate.inputs.empty()) {
      flag(ErrorCode::EmptyGate, "gate \"" + gate.id + "\" has no inputs");
    }
    if (gate.kind == GateKind::Xor && gate.inputs.size() < 2) {
      flag(ErrorCode::XorArityBelowTwo,
           "xor gate \"" + gate.id + "\" needs at least two inputs");
    }
    if (gate.kind == GateKind::PriorityAnd && gate.inputs.size() < 2) {
      flag(ErrorCode::PriorityAndArityBelowTwo,
           "priority-and gate \"" + gate.id + "\" needs at least two inputs");
    }
    for (const std::string& input : gate.inputs) {
      if (tree.find(input) == nullptr) {
        flag(ErrorCode::DanglingReference,
             "gate \"" + gate.id + "\" references undefined \"" + input + "\"");
      }
    }
    if (gate.condition) {
      const EventNode* cond = tree.find_event(*gate.condition);
      if (tree.find(*gate.condition) == nullptr) {
        flag(ErrorCode::DanglingReference,
             "gate \"" + gate.id + "\" condition references undefined \"" +
                 *gate.condition + "\"");
      } else if (cond == nullptr || cond->kind != EventKind::Conditioning) {
        flag(ErrorCode::BadCondition,
             "gate \"" + gate.id + "\" condition \"" + *gate.condition +
                 "\" is not a conditioning event");
      }
    }
  }

  // Cycle and reachability checks only make sense on resolvable graphs.
  bool resolvable =
      std::none_of(out.begin(), out.end(), [](const Violation& v) {
        return v.code == ErrorCode::DanglingReference ||
               v.code == ErrorCode::DuplicateId;
      });
  if (resolvable && tree.find_gate(tree.top)) {
    std::map<std::string, Mark> marks;
    if (has_cycle(tree, tree.top, marks)) {
      flag(ErrorCode::CyclicTree, "gate graph contains a cycle");
    } else {
      std::set<std::string> reached;
      reach(tree, tree.top, reached);
      for (const Node& node : tree.nodes) {
        if (!reached.contains(node_id(node))) {
          flag(ErrorCode::UnreachableNode,
               "node \"" + node_id(node) + "\" is not reachable from top");
        }
      }
    }
  }
  return out;
}

const FaultTree& validate_tree(const FaultTree& tree) {
  std::vector<Violation> violations = check_tree(tree);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return tree;
}

namespace {

bool evaluate_rec(const FaultTree& tree, const std::string& id,
                  const std::set<std::string>& failed,
                  std::map<std::string, bool>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  bool value = false;
  const Node* node = tree.find(id);
  if (const auto* event = std::get_if<EventNode>(node)) {
    value = event->stochastic() ? failed.contains(event->id)
                                : event->fixed_value();
  } else {
    const auto& gate = std::get<GateNode>(*node);
    switch (gate.kind) {
      case GateKind::Or:
        value = std::any_of(gate.inputs.begin(), gate.inputs.end(),
                            [&](const std::string& in) {
                              return evaluate_rec(tree, in, failed, memo);
                            });
        break;
      case GateKind::And:
      case GateKind::PriorityAnd:
        value = std::all_of(gate.inputs.begin(), gate.inputs.end(),
                            [&](const std::string& in) {
                              return evaluate_rec(tree, in, failed, memo);
                            });
        break;
      case GateKind::Xor: {
        int trues = 0;
        for (const std::string& in : gate.inputs) {
          if (evaluate_rec(tree, in, failed, memo)) ++trues;
        }
        value = trues == 1;
        break;
      }
    }
    if (gate.condition) {
      value = value && evaluate_rec(tree, *gate.condition, failed, memo);
    }
  }
  memo[id] = value;
  return value;
}

}  // namespace

bool evaluate_node(const FaultTree& tree, const std::string& node,
                   const std::set<std::string>& failed) {
  for (const std::string& id : failed) {
    const EventNode* event = tree.find_event(id);
    if (event == nullptr || !event->stochastic()) {
      throw Error(ErrorCode::UnknownEvent,
                  "\"" + id + "\" is not a stochastic event of this tree");
    }
  }
  if (tree.find(node) == nullptr) {
    throw Error(ErrorCode::UnknownEvent, "no node named \"" + node + "\"");
  }
  std::map<std::string, bool> memo;
  return evaluate_rec(tree, node, failed, memo);
}

bool evaluate(const FaultTree& tree, const std::set<std::string>& failed) {
  return evaluate_node(tree, tree.top, failed);
}

CompiledTree::CompiledTree(const FaultTree& tree) {
  for (const Node& node : tree.nodes) {
    if (const auto* event = std::get_if<EventNode>(&node)) {
      if (event->stochastic()) {
        bits_[event->id] = stochastic_ids_.size();
        stochastic_ids_.push_back(event->id);
      }
    }
  }
  std::map<std::string, std::size_t> memo;
  top_slot_ = compile(tree, tree.top, memo);
  // Expose slots for every node so callers can probe arbitrary gates.
  for (const Node& node : tree.nodes) {
    if (!memo.contains(node_id(node))) {
      compile(tree, node_id(node), memo);
    }
  }
  slots_ = std::move(memo);
  top_slot_ = slots_.at(tree.top);
}

std::size_t CompiledTree::compile(const FaultTree& tree, const std::string& id,
                                  std::map<std::string, std::size_t>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  const Node* node = tree.find(id);
  Step step;
  if (const auto* event = std::get_if<EventNode>(node)) {
    if (event->stochastic()) {
      step.op = Op::Var;
      step.var_bit = static_cast<std::uint32_t>(bits_.at(event->id));
    } else {
      step.op = Op::Const;
      step.value = event->fixed_value();
    }
  } else {
    const auto& gate = std::get<GateNode>(*node);
    switch (gate.kind) {
      case GateKind::Or: step.op = Op::Or; break;
      case GateKind::And:
      case GateKind::PriorityAnd: step.op = Op::And; break;
      case GateKind::Xor: step.op = Op::Xor; break;
    }
    for (const std::string& input : gate.inputs) {
      step.args.push_back(
          static_cast<std::uint32_t>(compile(tree, input, memo)));
    }
    if (gate.condition) {
      // A condition behaves as one more And input on the gate; wrap
      // non-And gates in an And step.
      std::size_t cond = compile(tree, *gate.condition, memo);
      if (step.op != Op::And) {
        steps_.push_back(std::move(step));
        std::size_t inner = steps_.size() - 1;
        step = Step{};
        step.op = Op::And;
        step.args = {static_cast<std::uint32_t>(inner),
                     static_cast<std::uint32_t>(cond)};
      } else {
        step.args.push_back(static_cast<std::uint32_t>(cond));
      }
    }
  }
  steps_.push_back(std::move(step));
  std::size_t slot = steps_.size() - 1;
  memo[id] = slot;
  return slot;
}

std::optional<std::size_t> CompiledTree::bit_of(const std::string& id) const {
  if (auto it = bits_.find(id); it != bits_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> CompiledTree::slot_of(const std::string& id) const {
  if (auto it = slots_.find(id); it != slots_.end()) return it->second;
  return std::nullopt;
}

void CompiledTree::evaluate_all(std::uint32_t failed_mask,
                                Scratch& values) const {
  values.resize(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& step = steps_[i];
    char value = 0;
    switch (step.op) {
      case Op::Var:
        value = (failed_mask >> step.var_bit) & 1u;
        break;
      case Op::Const:
        value = step.value ? 1 : 0;
        break;
      case Op::Or:
        for (std::uint32_t arg : step.args) value |= values[arg];
        break;
      case Op::And:
        value = 1;
        for (std::uint32_t arg : step.args) value &= values[arg];
        break;
      case Op::Xor: {
        int trues = 0;
        for (std::uint32_t arg : step.args) trues += values[arg];
        value = trues == 1;
        break;
      }
    }
    values[i] = value;
  }
}

}  // namespace epsrel
