#pragma once

#include <compare>
#include <string>
#include <vector>

#include "epsrel/fault_tree.hpp"

namespace epsrel {

/// Minimal set of stochastic events whose joint occurrence triggers the top
/// event.  Events are kept in canonical sorted order.
struct CutSet {
  std::vector<std::string> events;

  std::size_t size() const { return events.size(); }
  auto operator<=>(const CutSet&) const = default;
};

using CutSetList = std::vector<CutSet>;

/// All minimal cut sets of a validated coherent tree, by top-down gate
/// expansion (Or branches into alternatives, And merges them) with
/// absorption of non-minimal supersets.  Output is deterministic: ordered by
/// size, then lexicographically.
///
/// House/Conditioning events prune: a false one removes its And branch
/// entirely, a true one is neutral.  Throws NonCoherentTree if the tree
/// contains an Xor gate (quantify such trees by exhaustive enumeration
/// instead) and TautologicalTree if fixed events alone make the top certain.
CutSetList minimal_cut_sets(const FaultTree& tree);

/// True iff some cut set is a subset of `failed`.
bool cut_sets_imply(const CutSetList& sets,
                    const std::vector<std::string>& failed);

}  // namespace epsrel
