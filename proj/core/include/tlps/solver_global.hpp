#ifndef TLPS_SOLVER_GLOBAL_HPP
#define TLPS_SOLVER_GLOBAL_HPP

#include <span>

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"
#include "tlps/solver_config.hpp"

namespace tlps {

// One accelerated projected-gradient step for node u of Z_tau:
//   max((1+2a) z_u + a*lambda*(prev + next) + 2a sum_{v in N(u)} w(u,v) z_v
//       - 2a z_u Gram, 0)
// prev_row/next_row may be null (boundary timestamps contribute nothing).
// The caller normalizes the result and swaps it into the Gram cache.
void update_row_global(const GraphSnapshot& g, const LatentSpace& z, NodeId u,
                       const double* prev_row, const double* next_row, double alpha,
                       double lambda, std::span<const double> gram_zz, std::span<double> out);

// Joint inference over all snapshots: cyclic Gauss-Seidel sweeps over
// (tau, u) with incremental Gram maintenance, the step coefficient advancing
// once per full sweep, until the relative objective change drops below
// cfg.tol or cfg.max_iters sweeps have run.
Trajectory fit_global(const DynamicGraph& g, const SolverConfig& cfg);

}  // namespace tlps

#endif
