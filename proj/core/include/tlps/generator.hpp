#ifndef TLPS_GENERATOR_HPP
#define TLPS_GENERATOR_HPP

#include <cstdint>

#include "tlps/snapshot.hpp"
#include "tlps/temporal_edges.hpp"

namespace tlps {

// Drifting planted-partition stream: snapshot 1 samples a planted partition
// over contiguous equal-size blocks; each later snapshot moves a
// drift_fraction share of nodes to uniformly random blocks and resamples
// only their incident edges. Deterministic for a given seed. Pair sampling
// uses geometric skips, so cost is proportional to the edges produced.
struct PlantedPartitionParams {
  std::size_t n = 0;
  std::size_t blocks = 1;
  double p_in = 0.0;
  double p_out = 0.0;
  double drift_fraction = 0.0;
  std::size_t T = 1;
  std::uint64_t seed = 0;
};

DynamicGraph planted_partition_generate(const PlantedPartitionParams& p);

// Same stream flattened to "u v t" records with t = tau - 0.5, so slicing T
// equal intervals over [0, T] reproduces the snapshots exactly.
TemporalEdgeList planted_partition_edge_list(const PlantedPartitionParams& p);

}  // namespace tlps

#endif
