#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "epsrel/error.hpp"

namespace epsrel {

enum class EventKind { Basic, House, Undeveloped, Conditioning };
enum class GateKind { Or, And, Xor, PriorityAnd };

std::string_view to_string(EventKind kind);
std::string_view to_string(GateKind kind);

/// Leaf node of a fault tree.  Basic and Undeveloped events are the
/// stochastic ones; House and Conditioning events carry a fixed truth value
/// (`state`, required for House, defaulting to true for Conditioning).
struct EventNode {
  std::string id;
  EventKind kind = EventKind::Basic;
  std::string description;
  std::optional<bool> state;

  bool stochastic() const {
    return kind == EventKind::Basic || kind == EventKind::Undeveloped;
  }
  /// Deterministic truth value of a House/Conditioning event.
  bool fixed_value() const { return state.value_or(true); }

  bool operator==(const EventNode&) const = default;
};

struct GateNode {
  std::string id;
  GateKind kind = GateKind::Or;
  std::vector<std::string> inputs;  // order significant for PriorityAnd only
  std::optional<std::string> condition;  // id of a Conditioning event

  bool operator==(const GateNode&) const = default;
};

using Node = std::variant<EventNode, GateNode>;

const std::string& node_id(const Node& node);

/// Directed acyclic network of gates over events with a single top gate.
/// Nodes keep their definition order; `find` resolves ids.  A FaultTree is
/// plain data: validate_tree() establishes the invariants and every analysis
/// operation treats the tree as immutable after that.
struct FaultTree {
  std::vector<Node> nodes;
  std::string top;

  void add(EventNode event) { nodes.emplace_back(std::move(event)); }
  void add(GateNode gate) { nodes.emplace_back(std::move(gate)); }

  /// First node with this id, or nullptr.
  const Node* find(const std::string& id) const;
  const EventNode* find_event(const std::string& id) const;
  const GateNode* find_gate(const std::string& id) const;

  /// Ids of stochastic (Basic/Undeveloped) events in definition order.
  std::vector<std::string> stochastic_events() const;
  std::size_t gate_count() const;
  std::size_t event_count() const;

  bool operator==(const FaultTree&) const = default;
};

/// Collects every structural violation; an empty result means the tree is
/// well formed (unique ids, resolvable references, acyclic, reachable,
/// gate arities, top is a gate, house states present exactly on House
/// events, conditions attached to Conditioning events).
std::vector<Violation> check_tree(const FaultTree& tree);

/// Returns `tree` untouched if it is well formed, otherwise throws a
/// ValidationError listing all violations.
const FaultTree& validate_tree(const FaultTree& tree);

/// Truth value of the top event given the set of failed stochastic events.
/// Gate semantics: Or = any input, And = all inputs, Xor = exactly one
/// input, PriorityAnd = And (sequence information is not modeled), a
/// conditioned gate is the gate value and-ed with its condition's value.
/// House/Conditioning events contribute their fixed state.
///
/// Requires a validated tree.  Throws UnknownEvent if `failed` names
/// anything other than a stochastic event of this tree.
bool evaluate(const FaultTree& tree, const std::set<std::string>& failed);

/// Evaluate an arbitrary node (gate or event) instead of the top gate.
bool evaluate_node(const FaultTree& tree, const std::string& node,
                   const std::set<std::string>& failed);

/// Flattened, index-based form of a validated tree for tight enumeration
/// loops (exact quantification, scenario scans).  Stochastic events are
/// assigned bit positions in definition order.  Immutable after
/// construction; concurrent evaluation needs one Scratch per thread.
class CompiledTree {
 public:
  using Scratch = std::vector<char>;

  explicit CompiledTree(const FaultTree& tree);

  std::size_t stochastic_count() const { return stochastic_ids_.size(); }
  const std::vector<std::string>& stochastic_ids() const {
    return stochastic_ids_;
  }
  /// Bit position of a stochastic event id.
  std::optional<std::size_t> bit_of(const std::string& id) const;
  /// Value slot of any id (events and gates).
  std::optional<std::size_t> slot_of(const std::string& id) const;
  std::size_t top_slot() const { return top_slot_; }

  Scratch make_scratch() const { return Scratch(steps_.size()); }

  /// Computes every node's truth value for the given failed-set bitmask;
  /// read results out of `values` by slot.
  void evaluate_all(std::uint32_t failed_mask, Scratch& values) const;
  bool top_value(std::uint32_t failed_mask, Scratch& values) const {
    evaluate_all(failed_mask, values);
    return values[top_slot_] != 0;
  }

 private:
  enum class Op : std::uint8_t { Var, Const, Or, And, Xor };
  struct Step {
    Op op;
    std::uint32_t var_bit = 0;        // Var
    bool value = false;               // Const
    std::vector<std::uint32_t> args;  // gate input slots
  };

  std::size_t compile(const FaultTree& tree, const std::string& id,
                      std::map<std::string, std::size_t>& memo);

  std::vector<Step> steps_;  // topologically ordered, inputs before users
  std::vector<std::string> stochastic_ids_;
  std::map<std::string, std::size_t> bits_;
  std::map<std::string, std::size_t> slots_;
  std::size_t top_slot_ = 0;
};

}  // namespace epsrel
