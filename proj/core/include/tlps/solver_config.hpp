#ifndef TLPS_SOLVER_CONFIG_HPP
#define TLPS_SOLVER_CONFIG_HPP

#include <cstddef>
#include <cstdint>

namespace tlps {

struct SolverConfig {
  std::size_t k = 20;
  double lambda = 0.0001;       // 0.01 is the usual choice for local/incremental
  std::size_t max_iters = 100;  // sweep cap
  double tol = 1e-4;            // relative objective change between sweeps
  std::uint64_t seed = 0;
  double zeta = -1.0;   // incremental score threshold; < 0 selects sqrt(-ln(1 - 1/n))
  double delta = -1.0;  // incremental coordinate threshold; < 0 selects 2*zeta/k
  int threads = 1;      // 1 = deterministic reference mode
  bool store_trajectory = true;

  void validate() const;
  double zeta_for(std::size_t n) const;
  double delta_for(std::size_t n) const;
};

}  // namespace tlps

#endif
