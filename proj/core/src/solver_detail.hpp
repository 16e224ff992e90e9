#ifndef TLPS_SOLVER_DETAIL_HPP
#define TLPS_SOLVER_DETAIL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"
#include "tlps/solver_config.hpp"

namespace tlps::detail {

// Shared accelerated step. `temporal` is the already-combined temporal pull
// (prev + next for the joint solver, prev alone for the sequential ones) and
// must be null when lambda is zero, which keeps the lambda = 0 instruction
// stream identical across solvers. coord_ops, when given, accumulates the
// per-coordinate work actually executed.
void update_row(const GraphSnapshot& g, const LatentSpace& z, NodeId u, const double* temporal,
                double alpha, double lambda, std::span<const double> gram_zz,
                std::span<double> out, std::uint64_t* coord_ops);

inline double rel_change(double before, double after) {
  const double denom = std::max(std::abs(before), 1e-30);
  return std::abs(before - after) / denom;
}

// greedy coloring by ascending id; returns the color classes
std::vector<std::vector<NodeId>> color_classes(const GraphSnapshot& g);

// Fits one latent space against a single snapshot with the backward-only
// temporal pull (prev may be null). Shared by the sequential solver (every
// tau) and the incremental solver (tau = 1). Appends per-sweep objective
// values to segment_trace and returns the number of sweeps run.
std::size_t fit_single_space(const GraphSnapshot& g, LatentSpace& z, const LatentSpace* prev,
                             const SolverConfig& cfg, SolverStats& stats,
                             std::vector<double>& segment_trace);

}  // namespace tlps::detail

#endif
