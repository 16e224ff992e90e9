#include "tlps/solver_incremental.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "solver_detail.hpp"
#include "tlps/errors.hpp"
#include "tlps/kernels.hpp"
#include "tlps/rng.hpp"
#include "tlps/schedule.hpp"

namespace tlps {

void init_updated_rows(const GraphSnapshot& g, LatentSpace& z, std::span<const NodeId> changed) {
  const std::size_t k = z.dim();
  std::vector<double> acc(k);
  for (const NodeId u : changed) {
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    auto row = z.row(u);
    if (nb.empty()) {
      const double fill = 1.0 / std::sqrt(static_cast<double>(k));
      for (std::size_t c = 0; c < k; ++c) row[c] = fill;
      continue;
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto rv = z.row(nb[i]);
      for (std::size_t c = 0; c < k; ++c) acc[c] += ws[i] * rv[c];
      wsum += ws[i];
    }
    for (std::size_t c = 0; c < k; ++c) row[c] = acc[c] / wsum;
    row_normalize(row);
  }
}

namespace {

// Literal affected-set refresh; old_row(u) must return the previous-iterate
// row for updated nodes and the current row for everyone else. Members of
// s_old are visited ascending.
template <typename OldRow>
std::vector<NodeId> refresh_impl(const LatentSpace& cur, OldRow old_row,
                                 std::span<const NodeId> s_old, const GraphSnapshot& g,
                                 double delta_thresh, double zeta_thresh) {
  const std::size_t k = cur.dim();
  std::vector<char> in_s(cur.node_count(), 0);
  for (const NodeId u : s_old) in_s[u] = 1;
  auto dot = [k](const double* a, const double* b) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += a[c] * b[c];
    return s;
  };
  for (const NodeId u : s_old) {
    const double* zc = cur.row(u).data();
    const double* zo = old_row(u);
    bool all_below = true;
    for (std::size_t c = 0; c < k; ++c)
      if (!(std::abs(zc[c] - zo[c]) < delta_thresh)) {
        all_below = false;
        break;
      }
    if (all_below) in_s[u] = 0;
    for (const NodeId w : g.neighbors(u)) {
      const double cur_score = dot(zc, cur.row(w).data());
      const double old_score = dot(zo, old_row(w));
      if (std::abs(cur_score - old_score) >= zeta_thresh) in_s[w] = 1;
    }
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < cur.node_count(); ++u)
    if (in_s[u]) out.push_back(u);
  return out;
}

// Maintains the local objective under single-row changes so a conditional
// update pass costs O(|S| k (d + k)) instead of a full O(m k) re-evaluation.
// Components follow the same Gram identity as reconstruction_loss.
class LocalObjectiveTracker {
 public:
  void reset(const GraphSnapshot& g, const LatentSpace& z, const LatentSpace& z_prev,
             double lambda) {
    lambda_ = lambda;
    const std::size_t k = z.dim();
    const std::size_t n = z.node_count();
    norm2_.assign(n, 0.0);
    smooth_.assign(n, 0.0);
    sum_norm4_ = 0.0;
    sum_smooth_ = 0.0;
    const_w2_ = 0.0;
    var_edge_ = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      auto r = z.row(u);
      auto p = z_prev.row(u);
      double nn = 0.0, dp = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        nn += r[c] * r[c];
        dp += r[c] * p[c];
      }
      norm2_[u] = nn;
      sum_norm4_ += nn * nn;
      smooth_[u] = 1.0 - dp;
      sum_smooth_ += smooth_[u];
      auto nb = g.neighbors(u);
      auto ws = g.weights(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        auto rv = z.row(nb[i]);
        double dot = 0.0;
        for (std::size_t c = 0; c < k; ++c) dot += r[c] * rv[c];
        const_w2_ += ws[i] * ws[i];
        var_edge_ -= 2.0 * ws[i] * dot;
      }
    }
  }

  // both hooks take the snapshot row state around a single row write
  void before_row_change(const GraphSnapshot& g, const LatentSpace& z, NodeId u) {
    pending_ = incident_dot_sum(g, z, u);
  }

  void after_row_change(const GraphSnapshot& g, const LatentSpace& z, const LatentSpace& z_prev,
                        NodeId u) {
    const std::size_t k = z.dim();
    auto r = z.row(u);
    auto p = z_prev.row(u);
    double nn = 0.0, dp = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      nn += r[c] * r[c];
      dp += r[c] * p[c];
    }
    sum_norm4_ += nn * nn - norm2_[u] * norm2_[u];
    norm2_[u] = nn;
    const double s = 1.0 - dp;
    sum_smooth_ += s - smooth_[u];
    smooth_[u] = s;
    // ordered pairs (u,v) and (v,u) change together
    var_edge_ += -4.0 * (incident_dot_sum(g, z, u) - pending_);
  }

  double value(std::span<const double> gram_zz) const {
    double gf2 = 0.0;
    for (double v : gram_zz) gf2 += v * v;
    return gf2 - sum_norm4_ + const_w2_ + var_edge_ + lambda_ * sum_smooth_;
  }

 private:
  double incident_dot_sum(const GraphSnapshot& g, const LatentSpace& z, NodeId u) const {
    auto r = z.row(u);
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    double acc = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto rv = z.row(nb[i]);
      double dot = 0.0;
      for (std::size_t c = 0; c < r.size(); ++c) dot += r[c] * rv[c];
      acc += ws[i] * dot;
    }
    return acc;
  }

  double lambda_ = 0.0;
  std::vector<double> norm2_;
  std::vector<double> smooth_;
  double sum_norm4_ = 0.0;
  double sum_smooth_ = 0.0;
  double const_w2_ = 0.0;
  double var_edge_ = 0.0;
  double pending_ = 0.0;
};

// distinct neighbors of the member set (may overlap the set itself)
std::size_t count_distinct_neighbors(const GraphSnapshot& g, std::span<const NodeId> members,
                                     std::vector<std::uint32_t>& stamp, std::uint32_t& stamp_gen) {
  ++stamp_gen;
  std::size_t count = 0;
  for (const NodeId u : members)
    for (const NodeId v : g.neighbors(u))
      if (stamp[v] != stamp_gen) {
        stamp[v] = stamp_gen;
        ++count;
      }
  return count;
}

}  // namespace

std::vector<NodeId> refresh_affected_set(const LatentSpace& z_current,
                                         const LatentSpace& z_previous_iterate,
                                         std::span<const NodeId> s_old, const GraphSnapshot& g,
                                         double delta_thresh, double zeta_thresh) {
  if (z_current.node_count() != z_previous_iterate.node_count() ||
      z_current.dim() != z_previous_iterate.dim())
    throw ContractViolation("refresh_affected_set: space shapes differ");
  return refresh_impl(
      z_current, [&](NodeId u) { return z_previous_iterate.row(u).data(); }, s_old, g,
      delta_thresh, zeta_thresh);
}

Trajectory fit_incremental_stream(SnapshotSource& source, const SolverConfig& cfg,
                                  const SpaceCallback& on_space) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = source.node_count();
  const std::size_t T = source.snapshot_count();
  const std::size_t k = cfg.k;
  const double zeta = cfg.zeta_for(n);
  const double delta_thr = cfg.delta_for(n);

  Trajectory traj;
  LatentSpace z;
  {
    CounterRng rng(cfg.seed, 1);
    z = LatentSpace::random_unit(n, k, rng);
  }

  // tau = 1 follows the sequential solver's first-snapshot path
  GraphSnapshot prev_snap = source.snapshot(1);
  {
    std::vector<double> segment;
    const std::size_t sweeps =
        detail::fit_single_space(prev_snap, z, nullptr, cfg, traj.stats, segment);
    traj.iterations_used.push_back(sweeps);
    traj.objective_trace.insert(traj.objective_trace.end(), segment.begin(), segment.end());
    traj.stats.objective_segments.push_back(std::move(segment));
    traj.stats.affected_history.emplace_back();
  }
  if (on_space) on_space(1, z);
  if (cfg.store_trajectory) traj.spaces.push_back(z);

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t stamp_gen = 0;
  std::vector<double> out(k);
  LocalObjectiveTracker tracker;

  for (std::size_t tau = 2; tau <= T; ++tau) {
    const GraphSnapshot& snap = source.snapshot(tau);
    const DeltaGraph delta = diff_snapshots(prev_snap, snap);

    LatentSpace z_prev = std::move(z);
    z = z_prev;  // unchanged rows keep their previous positions
    init_updated_rows(snap, z, delta.changed_nodes);

    std::vector<NodeId> s = delta.changed_nodes;
    std::vector<double> gm = gram(z);
    tracker.reset(snap, z, z_prev, cfg.lambda);

    std::vector<double> segment{tracker.value(gm)};
    std::vector<AffectedIterStats> history;
    if (!std::isfinite(segment.front()))
      throw NumericalError("non-finite local objective at incremental init");

    StepSchedule schedule(n >= 2 ? lipschitz_constant(n, k) : 1.0);
    double j_prev = segment.front();
    std::size_t r = 0;
    std::vector<double> old_rows;
    std::unordered_map<NodeId, std::size_t> old_index;

    while (!s.empty() && r < cfg.max_iters) {
      const double alpha = schedule.alpha(r);
      old_rows.assign(s.size() * k, 0.0);
      old_index.clear();
      for (std::size_t i = 0; i < s.size(); ++i) {
        old_index.emplace(s[i], i);
        auto row = z.row(s[i]);
        std::copy(row.begin(), row.end(), old_rows.begin() + i * k);
      }

      for (const NodeId u : s) {
        const double* prow = cfg.lambda != 0.0 ? z_prev.row(u).data() : nullptr;
        detail::update_row(snap, z, u, prow, alpha, cfg.lambda, gm, out,
                           &traj.stats.coord_ops);
        row_normalize(out);
        tracker.before_row_change(snap, z, u);
        gram_row_swap(gm, z.row(u), out);
        std::copy(out.begin(), out.end(), z.row(u).begin());
        tracker.after_row_change(snap, z, z_prev, u);
        ++traj.stats.row_updates;
        traj.stats.neighbor_touches += snap.degree(u);
      }

      history.push_back(
          {s.size(), count_distinct_neighbors(snap, s, stamp, stamp_gen)});

      auto old_row = [&](NodeId v) -> const double* {
        auto it = old_index.find(v);
        if (it == old_index.end()) return z.row(v).data();
        return old_rows.data() + it->second * k;
      };
      s = refresh_impl(z, old_row, s, snap, delta_thr, zeta);

      ++r;
      const double j_new = tracker.value(gm);
      segment.push_back(j_new);
      if (!std::isfinite(j_new))
        throw NumericalError("non-finite local objective in incremental iteration " +
                             std::to_string(r));
      if (detail::rel_change(j_prev, j_new) < cfg.tol) break;
      j_prev = j_new;
    }

    traj.iterations_used.push_back(r);
    traj.objective_trace.insert(traj.objective_trace.end(), segment.begin(), segment.end());
    traj.stats.objective_segments.push_back(std::move(segment));
    traj.stats.affected_history.push_back(std::move(history));

    prev_snap = snap;  // keep alive across the next load
    if (on_space) on_space(tau, z);
    if (cfg.store_trajectory) traj.spaces.push_back(z);
  }
  if (!cfg.store_trajectory) traj.spaces.push_back(z);

  traj.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

Trajectory fit_incremental(const DynamicGraph& g, const SolverConfig& cfg) {
  InMemorySource source(g);
  SolverConfig c = cfg;
  c.store_trajectory = true;
  return fit_incremental_stream(source, c);
}

}  // namespace tlps
