#include "epsrel/cut_sets.hpp"

#include <algorithm>
#include <set>

namespace epsrel {

namespace {

using EventSet = std::set<std::string>;
// A list of alternative conjunctions; an empty conjunction means "certain".
using SetList = std::vector<EventSet>;

bool subset_of(const EventSet& small, const EventSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Drops duplicates and any set that has a proper or equal subset in the list.
SetList absorb(SetList sets) {
  std::sort(sets.begin(), sets.end(),
            [](const EventSet& a, const EventSet& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  SetList minimal;
  for (EventSet& candidate : sets) {
    bool absorbed = std::any_of(
        minimal.begin(), minimal.end(),
        [&](const EventSet& kept) { return subset_of(kept, candidate); });
    if (!absorbed) minimal.push_back(std::move(candidate));
  }
  return minimal;
}

SetList expand(const FaultTree& tree, const std::string& id,
               std::map<std::string, SetList>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;

  SetList result;
  const Node* node = tree.find(id);
  if (const auto* event = std::get_if<EventNode>(node)) {
    if (event->stochastic()) {
      result.push_back({event->id});
    } else if (event->fixed_value()) {
      result.push_back({});  // certain: neutral under And, absorbs under Or
    }                        // else: impossible branch, empty list
  } else {
    const auto& gate = std::get<GateNode>(*node);
    if (gate.kind == GateKind::Xor) {
      throw Error(ErrorCode::NonCoherentTree,
                  "gate \"" + gate.id +
                      "\" is exclusive-or; cut-set analysis handles coherent "
                      "trees only (use scenario enumeration)");
    }
    if (gate.kind == GateKind::Or) {
      for (const std::string& input : gate.inputs) {
        SetList branch = expand(tree, input, memo);
        result.insert(result.end(), branch.begin(), branch.end());
      }
    } else {  // And / PriorityAnd
      result.push_back({});
      for (const std::string& input : gate.inputs) {
        SetList branch = expand(tree, input, memo);
        SetList merged;
        for (const EventSet& left : result) {
          for (const EventSet& right : branch) {
            EventSet joint = left;
            joint.insert(right.begin(), right.end());
            merged.push_back(std::move(joint));
          }
        }
        result = absorb(std::move(merged));
      }
    }
    if (gate.condition) {
      SetList cond = expand(tree, *gate.condition, memo);
      SetList merged;
      for (const EventSet& left : result) {
        for (const EventSet& right : cond) {
          EventSet joint = left;
          joint.insert(right.begin(), right.end());
          merged.push_back(std::move(joint));
        }
      }
      result = std::move(merged);
    }
  }
  result = absorb(std::move(result));
  memo[id] = result;
  return result;
}

}  // namespace

CutSetList minimal_cut_sets(const FaultTree& tree) {
  std::map<std::string, SetList> memo;
  SetList sets = expand(tree, tree.top, memo);
  if (!sets.empty() && sets.front().empty()) {
    throw Error(ErrorCode::TautologicalTree,
                "fixed (house/conditioning) states make the top event "
                "certain; no cut sets over stochastic events exist");
  }
  CutSetList out;
  out.reserve(sets.size());
  for (const EventSet& set : sets) {
    out.push_back(CutSet{{set.begin(), set.end()}});
  }
  std::sort(out.begin(), out.end(), [](const CutSet& a, const CutSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.events < b.events;
  });
  return out;
}

bool cut_sets_imply(const CutSetList& sets,
                    const std::vector<std::string>& failed) {
  std::set<std::string> failed_set(failed.begin(), failed.end());
  return std::any_of(sets.begin(), sets.end(), [&](const CutSet& cs) {
    return std::all_of(
        cs.events.begin(), cs.events.end(),
        [&](const std::string& e) { return failed_set.contains(e); });
  });
}

}  // namespace epsrel
