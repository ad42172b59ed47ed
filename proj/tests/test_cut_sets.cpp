#include <doctest.h>

#include <random>

#include "epsrel/cut_sets.hpp"
#include "oracle.hpp"

using namespace epsrel;

namespace {

FaultTree textbook_tree() {
  // OR(AND(A,B), C)
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(EventNode{"C", EventKind::Basic, ""});
  tree.add(GateNode{"G", GateKind::And, {"A", "B"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"G", "C"}});
  tree.top = "TOP";
  return tree;
}

std::set<std::set<std::string>> as_sets(const CutSetList& list) {
  std::set<std::set<std::string>> out;
  for (const CutSet& cs : list) {
    out.insert({cs.events.begin(), cs.events.end()});
  }
  return out;
}

}  // namespace

TEST_CASE("textbook expansion: OR(AND(A,B), C)") {
  const CutSetList sets = minimal_cut_sets(textbook_tree());
  REQUIRE(sets.size() == 2);
  // Canonical order: singletons first, then lexicographic.
  CHECK(sets[0].events == std::vector<std::string>{"C"});
  CHECK(sets[1].events == std::vector<std::string>{"A", "B"});
}

TEST_CASE("distribution: AND(A, OR(B,C))") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(EventNode{"C", EventKind::Basic, ""});
  tree.add(GateNode{"G", GateKind::Or, {"B", "C"}});
  tree.add(GateNode{"TOP", GateKind::And, {"A", "G"}});
  tree.top = "TOP";
  const CutSetList sets = minimal_cut_sets(tree);
  CHECK(as_sets(sets) ==
        std::set<std::set<std::string>>{{"A", "B"}, {"A", "C"}});
}

TEST_CASE("absorption removes supersets") {
  // OR(A, AND(A,B)) -> {A}
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(GateNode{"G", GateKind::And, {"A", "B"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"A", "G"}});
  tree.top = "TOP";
  const CutSetList sets = minimal_cut_sets(tree);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].events == std::vector<std::string>{"A"});
}

TEST_CASE("false house event prunes its branch, true is neutral") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(EventNode{"H", EventKind::House, "", false});
  tree.add(GateNode{"G", GateKind::And, {"B", "H"}});
  tree.add(GateNode{"TOP", GateKind::Or, {"A", "G"}});
  tree.top = "TOP";
  CHECK(as_sets(minimal_cut_sets(tree)) ==
        std::set<std::set<std::string>>{{"A"}});

  std::get<EventNode>(tree.nodes[2]).state = true;
  CHECK(as_sets(minimal_cut_sets(tree)) ==
        std::set<std::set<std::string>>{{"A"}, {"B"}});
}

TEST_CASE("false condition prunes the conditioned gate") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(EventNode{"C", EventKind::Conditioning, "", false});
  tree.add(GateNode{"G", GateKind::And, {"B"}, "C"});
  tree.add(GateNode{"TOP", GateKind::Or, {"A", "G"}});
  tree.top = "TOP";
  CHECK(as_sets(minimal_cut_sets(tree)) ==
        std::set<std::set<std::string>>{{"A"}});
}

TEST_CASE("xor trees are rejected as non-coherent") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"B", EventKind::Basic, ""});
  tree.add(GateNode{"TOP", GateKind::Xor, {"A", "B"}});
  tree.top = "TOP";
  try {
    minimal_cut_sets(tree);
    FAIL("expected NonCoherentTree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCoherentTree);
  }
}

TEST_CASE("a certain top event has no cut-set representation") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"H", EventKind::House, "", true});
  tree.add(GateNode{"TOP", GateKind::Or, {"A", "H"}});
  tree.top = "TOP";
  try {
    minimal_cut_sets(tree);
    FAIL("expected TautologicalTree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TautologicalTree);
  }
}

TEST_CASE("an impossible top event yields an empty list") {
  FaultTree tree;
  tree.add(EventNode{"A", EventKind::Basic, ""});
  tree.add(EventNode{"H", EventKind::House, "", false});
  tree.add(GateNode{"TOP", GateKind::And, {"A", "H"}});
  tree.top = "TOP";
  CHECK(minimal_cut_sets(tree).empty());
}

TEST_CASE("deterministic canonical listing") {
  const CutSetList first = minimal_cut_sets(textbook_tree());
  const CutSetList second = minimal_cut_sets(textbook_tree());
  CHECK(first == second);
}

TEST_CASE("matches the exhaustive-assignment oracle on random trees") {
  std::mt19937 rng(424242);
  for (int round = 0; round < 60; ++round) {
    const FaultTree tree = testing::random_coherent_tree(rng, 12, 5);
    const CutSetList sets = minimal_cut_sets(tree);

    std::set<std::set<std::string>> expected;
    for (const auto& s : testing::oracle_minimal_cut_sets(tree)) {
      expected.insert(s);
    }
    CHECK(as_sets(sets) == expected);

    // Absorption: no member is a superset of another.
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (i == j) continue;
        const bool contains = std::includes(
            sets[j].events.begin(), sets[j].events.end(),
            sets[i].events.begin(), sets[i].events.end());
        CHECK_FALSE(contains);
      }
    }
  }
}

TEST_CASE("evaluation is equivalent to cut-set implication") {
  std::mt19937 rng(515151);
  for (int round = 0; round < 30; ++round) {
    const FaultTree tree = testing::random_coherent_tree(rng, 10, 4);
    const CutSetList sets = minimal_cut_sets(tree);
    for (const auto& subset : testing::all_subsets(tree)) {
      const std::vector<std::string> failed(subset.begin(), subset.end());
      CHECK(evaluate(tree, subset) == cut_sets_imply(sets, failed));
    }
  }
}
