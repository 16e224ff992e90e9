#ifndef TLPS_DELTA_HPP
#define TLPS_DELTA_HPP

#include <vector>

#include "tlps/snapshot.hpp"

namespace tlps {

// Edge-level difference between two consecutive snapshots. Node additions
// and removals show up as all-zero-row transitions, so edge sets are the
// whole story. changed_nodes is exactly the endpoint set of the listed
// changes, sorted ascending.
struct DeltaGraph {
  std::vector<NodeId> changed_nodes;
  std::vector<WeightedEdge> added_edges;           // weight = new weight
  std::vector<WeightedEdge> removed_edges;         // weight = old weight
  std::vector<WeightedEdge> weight_changed_edges;  // weight = new weight

  bool empty() const {
    return added_edges.empty() && removed_edges.empty() && weight_changed_edges.empty();
  }
};

// Throws ContractViolation when node counts differ.
DeltaGraph diff_snapshots(const GraphSnapshot& prev, const GraphSnapshot& next);

// Reconstructs `next` from `prev` plus its delta (test/property helper).
GraphSnapshot apply_delta(const GraphSnapshot& prev, const DeltaGraph& delta);

}  // namespace tlps

#endif
