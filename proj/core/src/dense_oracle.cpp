#include "tlps/dense_oracle.hpp"

#include <cmath>
#include <vector>

#include "tlps/errors.hpp"

namespace tlps {

namespace {

constexpr std::size_t kMaxOracleNodes = 64;

void check_size(std::size_t n) {
  if (n > kMaxOracleNodes)
    throw ContractViolation("dense oracle refused: n = " + std::to_string(n) + " exceeds 64");
}

std::vector<double> dense_adjacency(const GraphSnapshot& g) {
  const std::size_t n = g.node_count();
  std::vector<double> a(n * n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) a[std::size_t(u) * n + nb[i]] = ws[i];
  }
  return a;
}

std::vector<double> dense_product(const LatentSpace& z) {
  const std::size_t n = z.node_count();
  const std::size_t k = z.dim();
  std::vector<double> p(n * n, 0.0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      double dot = 0.0;
      for (std::size_t c = 0; c < k; ++c) dot += z.row(u)[c] * z.row(v)[c];
      p[std::size_t(u) * n + v] = dot;
    }
  return p;
}

// squared Frobenius distance over off-diagonal entries
double dense_loss(const GraphSnapshot& g, const LatentSpace& z) {
  const std::size_t n = g.node_count();
  auto a = dense_adjacency(g);
  auto p = dense_product(z);
  double loss = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double d = a[u * n + v] - p[u * n + v];
      loss += d * d;
    }
  return loss;
}

double dense_smoothness(const LatentSpace& cur, const LatentSpace& prev) {
  double s = 0.0;
  for (NodeId u = 0; u < cur.node_count(); ++u) {
    double dot = 0.0;
    for (std::size_t c = 0; c < cur.dim(); ++c) dot += cur.row(u)[c] * prev.row(u)[c];
    s += 1.0 - dot;
  }
  return s;
}

}  // namespace

double dense_objective_oracle(const DynamicGraph& g, const Trajectory& traj, double lambda) {
  check_size(g.node_count());
  if (traj.length() != g.snapshot_count())
    throw ContractViolation("dense oracle: trajectory length mismatch");
  double total = 0.0;
  for (std::size_t tau = 1; tau <= g.snapshot_count(); ++tau) {
    total += dense_loss(g.snapshot(tau), traj.spaces[tau - 1]);
    if (tau >= 2) total += lambda * dense_smoothness(traj.spaces[tau - 1], traj.spaces[tau - 2]);
  }
  return total;
}

double dense_local_objective_oracle(const GraphSnapshot& g, const LatentSpace& z,
                                    const LatentSpace* z_prev, double lambda) {
  check_size(g.node_count());
  double total = dense_loss(g, z);
  if (z_prev != nullptr) total += lambda * dense_smoothness(z, *z_prev);
  return total;
}

double dense_prediction_error_oracle(const DynamicGraph& g, const Trajectory& traj) {
  check_size(g.node_count());
  if (g.snapshot_count() < 2) throw ContractViolation("prediction error needs t >= 2");
  if (traj.length() != g.snapshot_count())
    throw ContractViolation("dense oracle: trajectory length mismatch");
  double total = 0.0;
  for (std::size_t tau = 2; tau <= g.snapshot_count(); ++tau)
    total += std::sqrt(dense_loss(g.snapshot(tau), traj.spaces[tau - 2]));
  return total / static_cast<double>(g.snapshot_count() - 1);
}

}  // namespace tlps
