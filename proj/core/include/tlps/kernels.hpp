#ifndef TLPS_KERNELS_HPP
#define TLPS_KERNELS_HPP

#include <span>
#include <vector>

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"

namespace tlps {

// k x k row-major Z^T Z
std::vector<double> gram(const LatentSpace& z);

// g <- g - old^T old + new^T new
void gram_row_swap(std::span<double> g, std::span<const double> old_row,
                   std::span<const double> new_row);

// ||G - Z Z^T||_F^2 over ordered off-diagonal pairs, evaluated sparsely via
// ||Z^T Z||_F^2 - sum_u ||z_u||^4 + sum_edges (w^2 - 2 w z_u.z_v); never
// materializes n x n.
double reconstruction_loss(const GraphSnapshot& g, const LatentSpace& z,
                           std::span<const double> gram_zz);
double reconstruction_loss(const GraphSnapshot& g, const LatentSpace& z);

// Full joint objective: sum_tau loss(G_tau, Z_tau)
//   + lambda * sum_{tau>=2} sum_u (1 - z_tau(u).z_{tau-1}(u))
double objective(const DynamicGraph& g, const Trajectory& traj, double lambda);

// Single-snapshot objective with only the backward smoothness term; z_prev
// may be null (tau = 1).
double local_objective(const GraphSnapshot& g, const LatentSpace& z, const LatentSpace* z_prev,
                       double lambda);

// Gradient of the per-node subproblem at z(u), simplified under the unit-row
// constraint:
//   -lambda (prev + next) + 2 z_u Gram - 2 z_u - 2 sum_{v in N(u)} w(u,v) z_v
// Null temporal rows contribute nothing.
void gradient_node(const GraphSnapshot& g, const LatentSpace& z, NodeId u, const double* prev_row,
                   const double* next_row, double lambda, std::span<const double> gram_zz,
                   std::span<double> out);

}  // namespace tlps

#endif
