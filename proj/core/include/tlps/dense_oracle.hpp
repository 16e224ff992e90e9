#ifndef TLPS_DENSE_ORACLE_HPP
#define TLPS_DENSE_ORACLE_HPP

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"

namespace tlps {

// Brute-force reference implementations that materialize full n x n
// matrices and follow the definitions literally. They exist to pin down the
// sparse kernels in tests and refuse to run beyond n = 64.

double dense_objective_oracle(const DynamicGraph& g, const Trajectory& traj, double lambda);

double dense_local_objective_oracle(const GraphSnapshot& g, const LatentSpace& z,
                                    const LatentSpace* z_prev, double lambda);

double dense_prediction_error_oracle(const DynamicGraph& g, const Trajectory& traj);

}  // namespace tlps

#endif
