#include "tlps/solver_local.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "solver_detail.hpp"
#include "tlps/errors.hpp"
#include "tlps/kernels.hpp"
#include "tlps/rng.hpp"
#include "tlps/schedule.hpp"

namespace tlps {

FileSource::FileSource(std::vector<std::string> paths) : paths_(std::move(paths)) {
  if (paths_.empty()) throw ContractViolation("FileSource needs at least one path");
  auto [g, tau] = load_snapshot_file(paths_.front());
  (void)tau;
  n_ = g.node_count();
  current_ = std::move(g);
  loaded_tau_ = 1;
}

const GraphSnapshot& FileSource::snapshot(std::size_t tau) {
  if (tau < 1 || tau > paths_.size()) throw ContractViolation("snapshot index out of range");
  if (loaded_tau_ != tau) {
    auto [g, file_tau] = load_snapshot_file(paths_[tau - 1]);
    (void)file_tau;
    if (g.node_count() != n_)
      throw ContractViolation("snapshot files disagree on node count: " + paths_[tau - 1]);
    current_ = std::move(g);
    loaded_tau_ = tau;
  }
  return current_;
}

namespace detail {

std::size_t fit_single_space(const GraphSnapshot& g, LatentSpace& z, const LatentSpace* prev,
                             const SolverConfig& cfg, SolverStats& stats,
                             std::vector<double>& segment_trace) {
  const std::size_t n = g.node_count();
  const std::size_t k = cfg.k;

  double j_prev = local_objective(g, z, prev, cfg.lambda);
  segment_trace.push_back(j_prev);
  if (!std::isfinite(j_prev)) throw NumericalError("non-finite local objective at start");
  if (n < 2) return 0;

  const std::size_t sweep_cap = g.edge_count() == 0 ? 1 : cfg.max_iters;
  if (g.edge_count() == 0) stats.empty_graph_warning = true;

  StepSchedule schedule(lipschitz_constant(n, k));
  std::vector<double> gm = gram(z);
  std::vector<double> out(k);
  std::vector<std::vector<NodeId>> classes;
  if (cfg.threads > 1) classes = color_classes(g);

  std::size_t sweeps = 0;
  for (std::size_t r = 0; r < sweep_cap; ++r) {
    const double alpha = schedule.alpha(r);
    if (cfg.threads <= 1) {
      for (NodeId u = 0; u < n; ++u) {
        const double* prow =
            (cfg.lambda != 0.0 && prev != nullptr) ? prev->row(u).data() : nullptr;
        update_row(g, z, u, prow, alpha, cfg.lambda, gm, out, &stats.coord_ops);
        row_normalize(out);
        gram_row_swap(gm, z.row(u), out);
        std::copy(out.begin(), out.end(), z.row(u).begin());
        ++stats.row_updates;
        stats.neighbor_touches += g.degree(u);
      }
    } else {
      std::vector<double> new_rows(n * k);
      for (const auto& members : classes) {
        const std::size_t nthreads =
            std::min<std::size_t>(cfg.threads, std::max<std::size_t>(members.size(), 1));
        std::vector<std::uint64_t> ops(nthreads, 0);
        auto work = [&](std::size_t t) {
          for (std::size_t i = t; i < members.size(); i += nthreads) {
            const NodeId u = members[i];
            const double* prow =
                (cfg.lambda != 0.0 && prev != nullptr) ? prev->row(u).data() : nullptr;
            std::span<double> slot(new_rows.data() + std::size_t(u) * k, k);
            update_row(g, z, u, prow, alpha, cfg.lambda, gm, slot, &ops[t]);
            row_normalize(slot);
          }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
        work(0);
        for (auto& th : pool) th.join();
        for (std::size_t t = 0; t < nthreads; ++t) stats.coord_ops += ops[t];
        for (const NodeId u : members) {
          std::span<const double> nr(new_rows.data() + std::size_t(u) * k, k);
          gram_row_swap(gm, z.row(u), nr);
          std::copy(nr.begin(), nr.end(), z.row(u).begin());
          ++stats.row_updates;
          stats.neighbor_touches += g.degree(u);
        }
      }
    }
    ++sweeps;
    gm = gram(z);
    const double j_new = local_objective(g, z, prev, cfg.lambda);
    segment_trace.push_back(j_new);
    if (!std::isfinite(j_new))
      throw NumericalError("non-finite local objective after sweep " + std::to_string(sweeps));
    if (rel_change(j_prev, j_new) < cfg.tol) {
      j_prev = j_new;
      break;
    }
    j_prev = j_new;
  }
  return sweeps;
}

}  // namespace detail

Trajectory fit_local_stream(SnapshotSource& source, const SolverConfig& cfg,
                            const SpaceCallback& on_space) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = source.node_count();
  const std::size_t T = source.snapshot_count();

  Trajectory traj;
  LatentSpace z;
  {
    CounterRng rng(cfg.seed, 1);
    z = LatentSpace::random_unit(n, cfg.k, rng);
  }
  LatentSpace z_prev;

  auto track_peak = [&]() {
    // one resident snapshot + two spaces + the k x k Gram
    const std::size_t bytes = source.resident_bytes() + z.memory_bytes() +
                              z_prev.memory_bytes() + cfg.k * cfg.k * sizeof(double);
    traj.stats.peak_bytes = std::max(traj.stats.peak_bytes, bytes);
  };

  for (std::size_t tau = 1; tau <= T; ++tau) {
    const GraphSnapshot& snap = source.snapshot(tau);
    if (tau > 1) {
      z_prev = std::move(z);
      z = z_prev;  // warm start from the previous space
    }
    std::vector<double> segment;
    const LatentSpace* prev = tau > 1 ? &z_prev : nullptr;
    const std::size_t sweeps = detail::fit_single_space(snap, z, prev, cfg, traj.stats, segment);
    traj.iterations_used.push_back(sweeps);
    traj.objective_trace.insert(traj.objective_trace.end(), segment.begin(), segment.end());
    traj.stats.objective_segments.push_back(std::move(segment));
    track_peak();
    if (on_space) on_space(tau, z);
    if (cfg.store_trajectory) traj.spaces.push_back(z);
  }
  if (!cfg.store_trajectory) traj.spaces.push_back(z);  // keep at least the final space

  traj.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

Trajectory fit_local(const DynamicGraph& g, const SolverConfig& cfg) {
  InMemorySource source(g);
  SolverConfig c = cfg;
  c.store_trajectory = true;
  return fit_local_stream(source, c);
}

}  // namespace tlps
