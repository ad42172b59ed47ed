#include <doctest.h>

#include <random>

#include "epsrel/fault_tree.hpp"
#include "oracle.hpp"

using namespace epsrel;

namespace {

FaultTree or_ab() {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, "a"});
  tree.add(EventNode{"B", EventKind::Basic, "b"});
  tree.add(GateNode{"TOP", GateKind::Or, {"A", "B"}});
  tree.top = "TOP";
  return tree;
}

bool has_violation(const std::vector<Violation>& violations, ErrorCode code) {
  for (const Violation& v : violations) {
    if (v.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal well-formed tree validates with M = 2") {
  FaultTree tree = or_ab();
  CHECK(check_tree(tree).empty());
  CHECK(validate_tree(tree).stochastic_events().size() == 2);
  CHECK(tree.gate_count() == 1);
  CHECK(tree.event_count() == 2);
}

TEST_CASE("dangling reference is reported with the missing id") {
  FaultTree tree = or_ab();
  tree.add(GateNode{"G", GateKind::Or, {"ZZZ"}});
  auto violations = check_tree(tree);
  CHECK(has_violation(violations, ErrorCode::DanglingReference));
  bool mentions = false;
  for (const auto& v : violations) {
    if (v.detail.find("ZZZ") != std::string::npos) mentions = true;
  }
  CHECK(mentions);
}

TEST_CASE("validation reports every violation at once") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"A", EventKind::Basic, ""});       // duplicate
  tree.add(GateNode{"G1", GateKind::Or, {}});           // empty
  tree.add(GateNode{"G2", GateKind::Xor, {"A"}});       // xor arity
  tree.top = "A";                                       // top not a gate
  auto violations = check_tree(tree);
  CHECK(has_violation(violations, ErrorCode::DuplicateId));
  CHECK(has_violation(violations, ErrorCode::EmptyGate));
  CHECK(has_violation(violations, ErrorCode::XorArityBelowTwo));
  CHECK(has_violation(violations, ErrorCode::TopIsNotGate));
  CHECK_THROWS_AS(validate_tree(tree), ValidationError);
  try {
    validate_tree(tree);
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() >= 4);
  }
}

TEST_CASE("cycles and unreachable nodes are rejected") {
  FaultTree cyclic;
  cyclic.add(EventNode{"A", EventKind::Basic, ""});
  cyclic.add(GateNode{"G1", GateKind::Or, {"G2", "A"}});
  cyclic.add(GateNode{"G2", GateKind::Or, {"G1"}});
  cyclic.top = "G1";
  CHECK(has_violation(check_tree(cyclic), ErrorCode::CyclicTree));

  FaultTree stray = or_ab();
  stray.add(EventNode{"LOST", EventKind::Basic, ""});
  CHECK(has_violation(check_tree(stray), ErrorCode::UnreachableNode));
}

TEST_CASE("priority-and arity and house state rules") {
  FaultTree tree = or_ab();
  tree.nodes[2] = GateNode{"TOP", GateKind::PriorityAnd, {"A"}};
  CHECK(has_violation(check_tree(tree), ErrorCode::PriorityAndArityBelowTwo));

  FaultTree houses;
  houses.add(EventNode{"H", EventKind::House, "no state"});
  houses.add(EventNode{"A", EventKind::Basic, "", true});  // state on basic
  houses.add(GateNode{"TOP", GateKind::Or, {"H", "A"}});
  houses.top = "TOP";
  auto violations = check_tree(houses);
  CHECK(has_violation(violations, ErrorCode::BadHouseState));
  CHECK(violations.size() >= 2);
}

TEST_CASE("condition must reference a conditioning event") {
  FaultTree tree = or_ab();
  std::get<GateNode>(tree.nodes[2]).condition = "A";
  CHECK(has_violation(check_tree(tree), ErrorCode::BadCondition));
}

TEST_CASE("or/and/xor gate semantics") {
  FaultTree tree = or_ab();
  CHECK_FALSE(evaluate(tree, {}));
  CHECK(evaluate(tree, {"A"}));
  CHECK(evaluate(tree, {"A", "B"}));

  std::get<GateNode>(tree.nodes[2]).kind = GateKind::And;
  CHECK_FALSE(evaluate(tree, {"A"}));
  CHECK(evaluate(tree, {"A", "B"}));

  std::get<GateNode>(tree.nodes[2]).kind = GateKind::Xor;
  CHECK_FALSE(evaluate(tree, {}));
  CHECK(evaluate(tree, {"A"}));
  CHECK(evaluate(tree, {"B"}));
  CHECK_FALSE(evaluate(tree, {"A", "B"}));  // exactly one, not all
}

TEST_CASE("priority-and evaluates as and") {
  FaultTree tree = or_ab();
  std::get<GateNode>(tree.nodes[2]).kind = GateKind::PriorityAnd;
  CHECK_FALSE(evaluate(tree, {"A"}));
  CHECK(evaluate(tree, {"A", "B"}));
}

TEST_CASE("house and conditioning events carry fixed values") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"H", EventKind::House, "", false});
  tree.add(EventNode{"C", EventKind::Conditioning, ""});  // defaults to true
  tree.add(GateNode{"G", GateKind::And, {"A", "H"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"G", "A"}, "C"});
  tree.top = "TOP";
  validate_tree(tree);

  // H false kills G; the top still sees A, and condition C holds.
  CHECK(evaluate(tree, {"A"}));
  CHECK_FALSE(evaluate(tree, {}));

  // A false condition vetoes the whole conditioned gate.
  std::get<EventNode>(tree.nodes[2]).state = false;
  CHECK_FALSE(evaluate(tree, {"A"}));
}

TEST_CASE("evaluate rejects unknown or non-stochastic failed ids") {
  FaultTree tree = or_ab();
  CHECK_THROWS_AS(evaluate(tree, {"NOPE"}), Error);
  try {
    evaluate(tree, {"NOPE"});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownEvent);
  }
}

TEST_CASE("evaluate_node probes interior gates") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(GateNode{"SUB", GateKind::And, {"A", "B"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"SUB", "A"}});
  tree.top = "TOP";
  CHECK_FALSE(evaluate_node(tree, "SUB", {"A"}));
  CHECK(evaluate_node(tree, "SUB", {"A", "B"}));
  CHECK(evaluate_node(tree, "A", {"A"}));
}

TEST_CASE("monotonicity on random coherent trees") {
  std::mt19937 rng(20240901);
  for (int round = 0; round < 40; ++round) {
    const FaultTree tree = testing::random_coherent_tree(rng, 10, 4);
    const auto events = tree.stochastic_events();
    std::uniform_int_distribution<int> coin(0, 1);
    for (int probe = 0; probe < 20; ++probe) {
      std::set<std::string> small;
      std::set<std::string> big;
      for (const std::string& id : events) {
        const bool in_small = coin(rng) == 1;
        const bool in_big = in_small || coin(rng) == 1;
        if (in_small) small.insert(id);
        if (in_big) big.insert(id);
      }
      if (evaluate(tree, small)) CHECK(evaluate(tree, big));
    }
  }
}

TEST_CASE("compiled evaluation matches the recursive walker") {
  std::mt19937 rng(777);
  for (int round = 0; round < 30; ++round) {
    const FaultTree tree = testing::random_coherent_tree(rng, 8, 4);
    CompiledTree compiled(tree);
    auto scratch = compiled.make_scratch();
    const auto events = tree.stochastic_events();
    REQUIRE(compiled.stochastic_count() == events.size());
    for (std::uint32_t mask = 0; mask < (1u << events.size()); ++mask) {
      std::set<std::string> failed;
      for (std::size_t i = 0; i < events.size(); ++i) {
        if ((mask >> i) & 1u) failed.insert(events[i]);
      }
      // Bit order in CompiledTree follows definition order, same as events.
      CHECK(compiled.top_value(mask, scratch) == evaluate(tree, failed));
    }
  }
}

TEST_CASE("compiled xor and condition handling") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(EventNode{"C", EventKind::Conditioning, "", false});
  tree.add(GateNode{"X", GateKind::Xor, {"A", "B"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"X", "A"}, "C"});
  tree.top = "TOP";
  validate_tree(tree);
  CompiledTree compiled(tree);
  auto scratch = compiled.make_scratch();
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    std::set<std::string> failed;
    if (mask & 1u) failed.insert("A");
    if (mask & 2u) failed.insert("B");
    CHECK(compiled.top_value(mask, scratch) == evaluate(tree, failed));
    CHECK_FALSE(compiled.top_value(mask, scratch));  // condition is false
  }
}
