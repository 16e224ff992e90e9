#ifndef TLPS_SOLVER_INCREMENTAL_HPP
#define TLPS_SOLVER_INCREMENTAL_HPP

#include <span>
#include <vector>

#include "tlps/delta.hpp"
#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"
#include "tlps/solver_config.hpp"
#include "tlps/solver_local.hpp"

namespace tlps {

// Working set of nodes whose latent position may still move.
struct AffectedSet {
  std::vector<NodeId> members;  // sorted ascending
  std::size_t generation = 0;   // inner iteration counter
};

// Re-initializes the rows of `changed` (ascending) as the weight-normalized
// average of their neighbors' current rows, then projects each onto the
// sphere; nodes with an empty row fall back to the uniform row. Unchanged
// rows must already hold their previous-timestamp values.
void init_updated_rows(const GraphSnapshot& g, LatentSpace& z, std::span<const NodeId> changed);

// One affected-set refresh: drop u from S when every coordinate of its row
// moved less than delta_thresh since the previous inner iterate; add any
// neighbor w of an old member whose pair score moved at least zeta_thresh.
std::vector<NodeId> refresh_affected_set(const LatentSpace& z_current,
                                         const LatentSpace& z_previous_iterate,
                                         std::span<const NodeId> s_old, const GraphSnapshot& g,
                                         double delta_thresh, double zeta_thresh);

// Incremental inference: Z_1 via the sequential tau = 1 path; afterwards
// each Z_tau starts as a copy of Z_{tau-1}, rows of changed nodes get the
// neighbor-average initialization, and conditional updates run over the
// affected set until the local objective converges or the set drains.
Trajectory fit_incremental(const DynamicGraph& g, const SolverConfig& cfg);
Trajectory fit_incremental_stream(SnapshotSource& source, const SolverConfig& cfg,
                                  const SpaceCallback& on_space = nullptr);

}  // namespace tlps

#endif
