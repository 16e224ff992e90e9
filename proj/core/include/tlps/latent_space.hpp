#ifndef TLPS_LATENT_SPACE_HPP
#define TLPS_LATENT_SPACE_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tlps/rng.hpp"
#include "tlps/snapshot.hpp"

namespace tlps {

// Row-major n x k nonnegative matrix; one row per node, each row on the unit
// sphere. Storage does not enforce the invariants (solvers and tests probe
// intermediate states); valid() checks them.
class LatentSpace {
 public:
  LatentSpace() = default;
  LatentSpace(std::size_t n, std::size_t k) : n_(n), k_(k), data_(n * k, 0.0) {}

  // entries ~ uniform(0,1), rows normalized
  static LatentSpace random_unit(std::size_t n, std::size_t k, CounterRng& rng);

  std::size_t node_count() const { return n_; }
  std::size_t dim() const { return k_; }

  std::span<double> row(NodeId u) { return {data_.data() + std::size_t(u) * k_, k_}; }
  std::span<const double> row(NodeId u) const { return {data_.data() + std::size_t(u) * k_, k_}; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool valid(double tol = 1e-9) const;
  std::size_t memory_bytes() const { return data_.capacity() * sizeof(double); }

  friend bool operator==(const LatentSpace&, const LatentSpace&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
};

// Normalizes to unit Euclidean norm; rows with norm <= 1e-12 become the
// uniform row 1/sqrt(k).
void row_normalize(std::span<double> row);

// Inferred spaces Z_1..Z_t plus fit diagnostics.
struct AffectedIterStats {
  std::size_t affected = 0;   // |S_r|
  std::size_t neighbors = 0;  // |N(S_r)| (distinct neighbors of S_r members)
};

struct SolverStats {
  std::uint64_t row_updates = 0;
  std::uint64_t neighbor_touches = 0;  // sum of d(u) over row updates
  std::uint64_t coord_ops = 0;         // per-coordinate work actually executed
  std::vector<std::vector<double>> objective_segments;  // per tau
  std::vector<std::vector<AffectedIterStats>> affected_history;  // per tau (incremental)
  std::size_t peak_bytes = 0;
  double wall_ms = 0.0;
  bool empty_graph_warning = false;
};

struct Trajectory {
  std::vector<LatentSpace> spaces;
  std::vector<double> objective_trace;
  std::vector<std::size_t> iterations_used;  // per tau
  SolverStats stats;

  std::size_t length() const { return spaces.size(); }
};

// Persistence: header "n k tau", then n lines of k reals at 17 significant
// digits (doubles round-trip exactly).
void save_latent(std::ostream& out, const LatentSpace& z, std::size_t tau);
void save_latent_file(const std::string& path, const LatentSpace& z, std::size_t tau);
std::pair<LatentSpace, std::size_t> load_latent(std::istream& in);
std::pair<LatentSpace, std::size_t> load_latent_file(const std::string& path);

}  // namespace tlps

#endif
