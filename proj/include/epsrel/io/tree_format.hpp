#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsrel/fault_tree.hpp"
#include "epsrel/quant.hpp"

namespace epsrel {

/// One `event` line of a tree file.
struct EventDef {
  std::string id;
  EventKind kind = EventKind::Basic;
  std::string description;
  std::optional<ProbabilityModel> model;
  std::optional<bool> state;  // required for house, optional for conditioning

  bool operator==(const EventDef&) const = default;
};

/// One `gate` line of a tree file.
struct GateDef {
  std::string id;
  GateKind kind = GateKind::Or;
  std::vector<std::string> inputs;
  std::optional<std::string> condition;

  bool operator==(const GateDef&) const = default;
};

/// Parsed form of the line-oriented tree file:
///
///   ftree 1
///   # comment
///   event <id> basic|house|undeveloped|conditioning "<description>"
///         [prob <q> | rate <lambda> [repair <mu>]] [state true|false]
///   gate <id> or|and|xor|priority-and <input>... [cond <id>]
///   top <id>
///
/// Definition order is preserved and the serializer reproduces it, so
/// parse(serialize(doc)) == doc.
struct TreeDocument {
  int version = 1;
  std::vector<EventDef> events;
  std::vector<GateDef> gates;
  std::string top;

  bool operator==(const TreeDocument&) const = default;

  FaultTree to_fault_tree() const;
  /// Models of events that define one.
  ModelMap models() const;
};

inline constexpr int kTreeFormatVersion = 1;

/// Parses and validates (including all fault-tree structural invariants).
/// Throws SyntaxError/SchemaViolation with file:line context, or a
/// ValidationError for semantic problems.
TreeDocument parse_tree_file(const std::string& path);
TreeDocument parse_tree_text(const std::string& text,
                             const std::string& origin = "<string>");

std::string serialize_tree(const TreeDocument& doc);

}  // namespace epsrel
