#ifndef TLPS_SOLVER_LOCAL_HPP
#define TLPS_SOLVER_LOCAL_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"
#include "tlps/solver_config.hpp"

namespace tlps {

// As update_row_global but with only the backward temporal pull
// a*lambda*prev. With lambda = 0 the two produce bit-identical output.
void update_row_local(const GraphSnapshot& g, const LatentSpace& z, NodeId u,
                      const double* prev_row, double alpha, double lambda,
                      std::span<const double> gram_zz, std::span<double> out);

// Pull interface so the sequential solvers can stream snapshots from disk
// and hold only one at a time.
class SnapshotSource {
 public:
  virtual ~SnapshotSource() = default;
  virtual std::size_t snapshot_count() const = 0;
  virtual std::size_t node_count() const = 0;
  // Reference stays valid until the next snapshot() call.
  virtual const GraphSnapshot& snapshot(std::size_t tau) = 0;
  virtual std::size_t resident_bytes() const = 0;
};

class InMemorySource final : public SnapshotSource {
 public:
  explicit InMemorySource(const DynamicGraph& g) : g_(g) {}
  std::size_t snapshot_count() const override { return g_.snapshot_count(); }
  std::size_t node_count() const override { return g_.node_count(); }
  const GraphSnapshot& snapshot(std::size_t tau) override { return g_.snapshot(tau); }
  std::size_t resident_bytes() const override { return 0; }  // caller owns the graph

 private:
  const DynamicGraph& g_;
};

// Loads "# snapshot tau n m" files one at a time, in the order given.
class FileSource final : public SnapshotSource {
 public:
  explicit FileSource(std::vector<std::string> paths);
  std::size_t snapshot_count() const override { return paths_.size(); }
  std::size_t node_count() const override { return n_; }
  const GraphSnapshot& snapshot(std::size_t tau) override;
  std::size_t resident_bytes() const override { return current_.memory_bytes(); }

 private:
  std::vector<std::string> paths_;
  std::size_t n_ = 0;
  GraphSnapshot current_;
  std::size_t loaded_tau_ = 0;
};

// Sequential inference: Z_1 from a random start, each later Z_tau warm
// started from Z_{tau-1} and refined against G_tau alone. The tau = 1 fit
// carries no temporal term. on_space (may be null) observes each finished
// space; spaces are retained in the result only when cfg.store_trajectory.
using SpaceCallback = std::function<void(std::size_t tau, const LatentSpace&)>;

Trajectory fit_local(const DynamicGraph& g, const SolverConfig& cfg);
Trajectory fit_local_stream(SnapshotSource& source, const SolverConfig& cfg,
                            const SpaceCallback& on_space = nullptr);

}  // namespace tlps

#endif
