// Test-only brute-force oracles and random input generators.  Everything
// here evaluates trees by plain recursion over the raw node structures and
// enumerates subsets directly, sharing no algorithmic path with the library
// code it cross-checks.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epsrel/fault_tree.hpp"
#include "epsrel/io/tree_format.hpp"

namespace epsrel::testing {

/// Straight recursive evaluation (no memoization, no compilation).
bool oracle_evaluate(const FaultTree& tree, const std::string& node,
                     const std::set<std::string>& failed);
bool oracle_evaluate(const FaultTree& tree,
                     const std::set<std::string>& failed);

/// All minimal satisfying subsets of the stochastic events: W satisfies and
/// no single removal still satisfies.  Exact for coherent trees.
std::vector<std::set<std::string>> oracle_minimal_cut_sets(
    const FaultTree& tree);

/// Weighted 2^M enumeration of the top-event probability.
double oracle_top_probability(const FaultTree& tree,
                              const std::map<std::string, double>& q);

/// Random coherent tree (Or/And gates only) with at most `max_events`
/// stochastic events and the given depth bound.  Events may feed several
/// gates, so the result is a DAG in general.
FaultTree random_coherent_tree(std::mt19937& rng, int max_events = 12,
                               int max_depth = 5);

/// Uniform per-event probabilities in [lo, hi].
std::map<std::string, double> random_probabilities(const FaultTree& tree,
                                                   std::mt19937& rng,
                                                   double lo, double hi);

/// Random well-formed document (random coherent tree plus random models and
/// descriptions), for round-trip and CLI corpora.
TreeDocument random_tree_document(std::mt19937& rng);

/// All subsets of the tree's stochastic events (M <= 20).
std::vector<std::set<std::string>> all_subsets(const FaultTree& tree);

}  // namespace epsrel::testing
