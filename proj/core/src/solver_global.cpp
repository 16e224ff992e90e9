#include "tlps/solver_global.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "solver_detail.hpp"
#include "tlps/errors.hpp"
#include "tlps/kernels.hpp"
#include "tlps/rng.hpp"
#include "tlps/schedule.hpp"

namespace tlps {

namespace {

using detail::rel_change;

double objective_with_grams(const DynamicGraph& g, const Trajectory& traj, double lambda,
                            const std::vector<std::vector<double>>& grams) {
  double total = 0.0;
  for (std::size_t tau = 1; tau <= g.snapshot_count(); ++tau) {
    const auto& z = traj.spaces[tau - 1];
    total += reconstruction_loss(g.snapshot(tau), z, grams[tau - 1]);
    if (tau >= 2) {
      const auto& zp = traj.spaces[tau - 2];
      for (NodeId u = 0; u < z.node_count(); ++u) {
        auto a = z.row(u);
        auto b = zp.row(u);
        double dot = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) dot += a[c] * b[c];
        total += lambda * (1.0 - dot);
      }
    }
  }
  return total;
}

}  // namespace

Trajectory fit_global(const DynamicGraph& g, const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.node_count();
  const std::size_t T = g.snapshot_count();
  const std::size_t k = cfg.k;

  Trajectory traj;
  traj.spaces.reserve(T);
  for (std::size_t tau = 1; tau <= T; ++tau) {
    CounterRng rng(cfg.seed, tau);
    traj.spaces.push_back(LatentSpace::random_unit(n, k, rng));
  }
  traj.iterations_used.assign(T, 0);

  std::size_t total_edges = 0;
  for (const auto& s : g.snapshots()) total_edges += s.edge_count();

  if (n < 2) {
    // nothing to factor; still a well-formed trajectory
    traj.stats.empty_graph_warning = true;
    traj.objective_trace.push_back(objective(g, traj, cfg.lambda));
    traj.stats.objective_segments.push_back(traj.objective_trace);
    return traj;
  }

  const bool empty_graph = total_edges == 0;
  const std::size_t sweep_cap = empty_graph ? 1 : cfg.max_iters;
  traj.stats.empty_graph_warning = empty_graph;

  StepSchedule schedule(lipschitz_constant(n, k));
  std::vector<std::vector<double>> grams;
  grams.reserve(T);
  for (std::size_t tau = 1; tau <= T; ++tau) grams.push_back(gram(traj.spaces[tau - 1]));

  std::vector<std::vector<std::vector<NodeId>>> classes_per_tau;
  if (cfg.threads > 1) {
    classes_per_tau.reserve(T);
    for (std::size_t tau = 1; tau <= T; ++tau)
      classes_per_tau.push_back(detail::color_classes(g.snapshot(tau)));
  }

  double j_prev = objective_with_grams(g, traj, cfg.lambda, grams);
  traj.objective_trace.push_back(j_prev);
  if (!std::isfinite(j_prev)) throw NumericalError("non-finite objective at initialization");

  std::vector<double> out(k), temporal(k);
  std::size_t sweeps = 0;
  for (std::size_t r = 0; r < sweep_cap; ++r) {
    const double alpha = schedule.alpha(r);
    for (std::size_t tau = 1; tau <= T; ++tau) {
      const GraphSnapshot& snap = g.snapshot(tau);
      LatentSpace& z = traj.spaces[tau - 1];
      auto& gm = grams[tau - 1];

      auto temporal_row = [&](NodeId u) -> const double* {
        if (cfg.lambda == 0.0) return nullptr;
        const double* prev = tau > 1 ? traj.spaces[tau - 2].row(u).data() : nullptr;
        const double* next = tau < T ? traj.spaces[tau].row(u).data() : nullptr;
        if (prev != nullptr && next != nullptr) {
          for (std::size_t c = 0; c < k; ++c) temporal[c] = prev[c] + next[c];
          return temporal.data();
        }
        return prev != nullptr ? prev : next;
      };

      if (cfg.threads <= 1) {
        for (NodeId u = 0; u < n; ++u) {
          detail::update_row(snap, z, u, temporal_row(u), alpha, cfg.lambda, gm, out,
                             &traj.stats.coord_ops);
          row_normalize(out);
          gram_row_swap(gm, z.row(u), out);
          std::copy(out.begin(), out.end(), z.row(u).begin());
          ++traj.stats.row_updates;
          traj.stats.neighbor_touches += snap.degree(u);
        }
      } else {
        // neighbor-disjoint batches: rows in one class update against the
        // batch-start Gram, swaps applied in ascending order afterwards
        std::vector<double> new_rows(n * k);
        for (const auto& members : classes_per_tau[tau - 1]) {
          const std::size_t nthreads =
              std::min<std::size_t>(cfg.threads, std::max<std::size_t>(members.size(), 1));
          std::vector<std::uint64_t> ops(nthreads, 0);
          auto work = [&](std::size_t t) {
            std::vector<double> tbuf(k);
            for (std::size_t i = t; i < members.size(); i += nthreads) {
              const NodeId u = members[i];
              const double* trow = nullptr;
              if (cfg.lambda != 0.0) {
                const double* prev = tau > 1 ? traj.spaces[tau - 2].row(u).data() : nullptr;
                const double* next = tau < T ? traj.spaces[tau].row(u).data() : nullptr;
                if (prev != nullptr && next != nullptr) {
                  for (std::size_t c = 0; c < k; ++c) tbuf[c] = prev[c] + next[c];
                  trow = tbuf.data();
                } else {
                  trow = prev != nullptr ? prev : next;
                }
              }
              std::span<double> slot(new_rows.data() + std::size_t(u) * k, k);
              detail::update_row(snap, z, u, trow, alpha, cfg.lambda, gm, slot, &ops[t]);
              row_normalize(slot);
            }
          };
          std::vector<std::thread> pool;
          for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
          work(0);
          for (auto& th : pool) th.join();
          for (std::size_t t = 0; t < nthreads; ++t) traj.stats.coord_ops += ops[t];
          for (const NodeId u : members) {
            std::span<const double> nr(new_rows.data() + std::size_t(u) * k, k);
            gram_row_swap(gm, z.row(u), nr);
            std::copy(nr.begin(), nr.end(), z.row(u).begin());
            ++traj.stats.row_updates;
            traj.stats.neighbor_touches += snap.degree(u);
          }
        }
      }
    }
    ++sweeps;
    for (std::size_t tau = 1; tau <= T; ++tau) grams[tau - 1] = gram(traj.spaces[tau - 1]);
    const double j_new = objective_with_grams(g, traj, cfg.lambda, grams);
    traj.objective_trace.push_back(j_new);
    if (!std::isfinite(j_new))
      throw NumericalError("non-finite objective after sweep " + std::to_string(sweeps));
    if (rel_change(j_prev, j_new) < cfg.tol) {
      j_prev = j_new;
      break;
    }
    j_prev = j_new;
  }

  traj.iterations_used.assign(T, sweeps);
  traj.stats.objective_segments.push_back(traj.objective_trace);
  traj.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

}  // namespace tlps
