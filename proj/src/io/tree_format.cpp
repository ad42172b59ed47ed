#include "epsrel/io/tree_format.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace epsrel {

FaultTree TreeDocument::to_fault_tree() const {
  FaultTree tree;
  for (const EventDef& def : events) {
    EventNode node;
    node.id = def.id;
    node.kind = def.kind;
    node.description = def.description;
    node.state = def.state;
    tree.add(std::move(node));
  }
  for (const GateDef& def : gates) {
    GateNode node;
    node.id = def.id;
    node.kind = def.kind;
    node.inputs = def.inputs;
    node.condition = def.condition;
    tree.add(std::move(node));
  }
  tree.top = top;
  return tree;
}

ModelMap TreeDocument::models() const {
  ModelMap map;
  for (const EventDef& def : events) {
    if (def.model) map[def.id] = *def.model;
  }
  return map;
}

namespace {

struct Cursor {
  const std::string& origin;
  int line = 0;

  [[noreturn]] void fail_syntax(const std::string& message) const {
    throw Error(ErrorCode::SyntaxError,
                origin + ":" + std::to_string(line) + ": " + message);
  }
  [[noreturn]] void fail_schema(const std::string& message) const {
    throw Error(ErrorCode::SchemaViolation,
                origin + ":" + std::to_string(line) + ": " + message);
  }
};

// Whitespace-separated tokens; a double-quoted token may contain spaces and
// the escapes \" and \\.
std::vector<std::string> tokenize(const std::string& line, const Cursor& at) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::string token;
    if (line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size() &&
            (line[i + 1] == '"' || line[i + 1] == '\\')) {
          token.push_back(line[i + 1]);
          i += 2;
        } else if (line[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          token.push_back(line[i++]);
        }
      }
      if (!closed) at.fail_syntax("unterminated quoted string");
    } else {
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i]))) {
        token.push_back(line[i++]);
      }
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

double parse_number(const std::string& token, const Cursor& at,
                    const std::string& field) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(value)) {
      at.fail_schema(field + ": \"" + token + "\" is not a finite number");
    }
    return value;
  } catch (const std::logic_error&) {
    at.fail_schema(field + ": \"" + token + "\" is not a number");
  }
}

bool parse_bool(const std::string& token, const Cursor& at,
                const std::string& field) {
  if (token == "true") return true;
  if (token == "false") return false;
  at.fail_schema(field + ": expected true or false, got \"" + token + "\"");
}

EventKind parse_event_kind(const std::string& token, const Cursor& at) {
  if (token == "basic") return EventKind::Basic;
  if (token == "house") return EventKind::House;
  if (token == "undeveloped") return EventKind::Undeveloped;
  if (token == "conditioning") return EventKind::Conditioning;
  at.fail_schema("unknown event kind \"" + token + "\"");
}

GateKind parse_gate_kind(const std::string& token, const Cursor& at) {
  if (token == "or") return GateKind::Or;
  if (token == "and") return GateKind::And;
  if (token == "xor") return GateKind::Xor;
  if (token == "priority-and") return GateKind::PriorityAnd;
  at.fail_schema("unknown gate kind \"" + token + "\"");
}

EventDef parse_event(const std::vector<std::string>& tokens,
                     const Cursor& at) {
  if (tokens.size() < 4) {
    at.fail_schema("event needs <id> <kind> \"<description>\"");
  }
  EventDef def;
  def.id = tokens[1];
  def.kind = parse_event_kind(tokens[2], at);
  def.description = tokens[3];
  std::size_t i = 4;
  while (i < tokens.size()) {
    const std::string& key = tokens[i];
    if (key == "prob") {
      if (i + 1 >= tokens.size()) at.fail_schema("prob needs a value");
      if (def.model) at.fail_schema("more than one model on event");
      def.model = ConstantProbability{parse_number(tokens[i + 1], at, "prob")};
      i += 2;
    } else if (key == "rate") {
      if (i + 1 >= tokens.size()) at.fail_schema("rate needs a value");
      if (def.model) at.fail_schema("more than one model on event");
      const double lambda = parse_number(tokens[i + 1], at, "rate");
      i += 2;
      if (i < tokens.size() && tokens[i] == "repair") {
        if (i + 1 >= tokens.size()) at.fail_schema("repair needs a value");
        def.model = FailureWithRepair{
            lambda, parse_number(tokens[i + 1], at, "repair")};
        i += 2;
      } else {
        def.model = FailureRateOnly{lambda};
      }
    } else if (key == "state") {
      if (i + 1 >= tokens.size()) at.fail_schema("state needs true|false");
      def.state = parse_bool(tokens[i + 1], at, "state");
      i += 2;
    } else {
      at.fail_schema("unknown event attribute \"" + key + "\"");
    }
  }
  if (def.state && def.kind != EventKind::House &&
      def.kind != EventKind::Conditioning) {
    at.fail_schema("state only applies to house/conditioning events");
  }
  if (def.kind == EventKind::House && !def.state) {
    at.fail_schema("house event needs state true|false");
  }
  if (def.model && (def.kind == EventKind::House ||
                    def.kind == EventKind::Conditioning)) {
    at.fail_schema("deterministic events carry no probability model");
  }
  if (def.model) validate_model(*def.model, def.id);
  return def;
}

GateDef parse_gate(const std::vector<std::string>& tokens, const Cursor& at) {
  if (tokens.size() < 4) {
    at.fail_schema("gate needs <id> <kind> <input>...");
  }
  GateDef def;
  def.id = tokens[1];
  def.kind = parse_gate_kind(tokens[2], at);
  std::size_t i = 3;
  while (i < tokens.size()) {
    if (tokens[i] == "cond") {
      if (i + 1 >= tokens.size()) at.fail_schema("cond needs an event id");
      if (def.condition) at.fail_schema("more than one condition on gate");
      def.condition = tokens[i + 1];
      i += 2;
    } else {
      def.inputs.push_back(tokens[i]);
      ++i;
    }
  }
  return def;
}

}  // namespace

TreeDocument parse_tree_text(const std::string& text,
                             const std::string& origin) {
  TreeDocument doc;
  Cursor at{origin, 0};
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  bool saw_top = false;
  while (std::getline(in, line)) {
    ++at.line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens = tokenize(line, at);
    if (tokens.empty() || tokens[0].starts_with('#')) continue;
    if (!saw_header) {
      if (tokens.size() != 2 || tokens[0] != "ftree") {
        at.fail_syntax("expected header \"ftree <version>\"");
      }
      if (tokens[1] != std::to_string(kTreeFormatVersion)) {
        at.fail_schema("unsupported format version \"" + tokens[1] + "\"");
      }
      doc.version = kTreeFormatVersion;
      saw_header = true;
      continue;
    }
    if (tokens[0] == "event") {
      doc.events.push_back(parse_event(tokens, at));
    } else if (tokens[0] == "gate") {
      doc.gates.push_back(parse_gate(tokens, at));
    } else if (tokens[0] == "top") {
      if (tokens.size() != 2) at.fail_schema("top needs exactly one gate id");
      if (saw_top) at.fail_schema("more than one top line");
      doc.top = tokens[1];
      saw_top = true;
    } else {
      at.fail_syntax("unknown directive \"" + tokens[0] + "\"");
    }
  }
  if (!saw_header) {
    at.line = 1;
    at.fail_syntax("empty file: expected header \"ftree 1\"");
  }
  if (!saw_top) {
    at.fail_schema("missing top line");
  }
  validate_tree(doc.to_fault_tree());
  return doc;
}

TreeDocument parse_tree_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open tree file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tree_text(buffer.str(), path);
}

namespace {

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_number(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

std::string serialize_tree(const TreeDocument& doc) {
  std::ostringstream out;
  out << "ftree " << doc.version << '\n';
  for (const EventDef& def : doc.events) {
    out << "event " << def.id << ' ' << to_string(def.kind) << ' '
        << quote(def.description);
    if (def.model) {
      std::visit(
          [&out](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantProbability>) {
              out << " prob " << format_number(m.q);
            } else if constexpr (std::is_same_v<T, FailureRateOnly>) {
              out << " rate " << format_number(m.lambda);
            } else {
              out << " rate " << format_number(m.lambda) << " repair "
                  << format_number(m.mu);
            }
          },
          *def.model);
    }
    if (def.state) {
      out << " state " << (*def.state ? "true" : "false");
    }
    out << '\n';
  }
  for (const GateDef& def : doc.gates) {
    out << "gate " << def.id << ' ' << to_string(def.kind);
    for (const std::string& input : def.inputs) out << ' ' << input;
    if (def.condition) out << " cond " << *def.condition;
    out << '\n';
  }
  out << "top " << doc.top << '\n';
  return out.str();
}

}  // namespace epsrel
