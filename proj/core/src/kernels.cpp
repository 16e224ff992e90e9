#include "tlps/kernels.hpp"

#include <cmath>

#include "tlps/errors.hpp"

namespace tlps {

std::vector<double> gram(const LatentSpace& z) {
  const std::size_t k = z.dim();
  std::vector<double> g(k * k, 0.0);
  for (NodeId u = 0; u < z.node_count(); ++u) {
    auto r = z.row(u);
    for (std::size_t i = 0; i < k; ++i) {
      const double ri = r[i];
      for (std::size_t j = 0; j < k; ++j) g[i * k + j] += ri * r[j];
    }
  }
  return g;
}

void gram_row_swap(std::span<double> g, std::span<const double> old_row,
                   std::span<const double> new_row) {
  const std::size_t k = old_row.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double oi = old_row[i];
    const double ni = new_row[i];
    for (std::size_t j = 0; j < k; ++j) g[i * k + j] += ni * new_row[j] - oi * old_row[j];
  }
}

double reconstruction_loss(const GraphSnapshot& g, const LatentSpace& z,
                           std::span<const double> gram_zz) {
  if (g.node_count() != z.node_count())
    throw ContractViolation("reconstruction_loss: node count mismatch");
  const std::size_t k = z.dim();
  double loss = 0.0;
  for (double v : gram_zz) loss += v * v;  // ||Z^T Z||_F^2 == ||Z Z^T||_F^2
  for (NodeId u = 0; u < z.node_count(); ++u) {
    auto r = z.row(u);
    double nn = 0.0;
    for (double x : r) nn += x * x;
    loss -= nn * nn;  // remove diagonal (z_u.z_u)^2 terms
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto rv = z.row(nb[i]);
      double dot = 0.0;
      for (std::size_t c = 0; c < k; ++c) dot += r[c] * rv[c];
      loss += ws[i] * ws[i] - 2.0 * ws[i] * dot;  // (w - s)^2 = s^2 + w^2 - 2ws
    }
  }
  return loss;
}

double reconstruction_loss(const GraphSnapshot& g, const LatentSpace& z) {
  return reconstruction_loss(g, z, gram(z));
}

namespace {

double smoothness_term(const LatentSpace& cur, const LatentSpace& prev) {
  double s = 0.0;
  for (NodeId u = 0; u < cur.node_count(); ++u) {
    auto a = cur.row(u);
    auto b = prev.row(u);
    double dot = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) dot += a[c] * b[c];
    s += 1.0 - dot;
  }
  return s;
}

}  // namespace

double objective(const DynamicGraph& g, const Trajectory& traj, double lambda) {
  if (traj.length() != g.snapshot_count())
    throw ContractViolation("objective: trajectory length differs from snapshot count");
  double total = 0.0;
  for (std::size_t tau = 1; tau <= g.snapshot_count(); ++tau) {
    const auto& z = traj.spaces[tau - 1];
    if (z.node_count() != g.node_count())
      throw ContractViolation("objective: latent space node count mismatch");
    total += reconstruction_loss(g.snapshot(tau), z);
    if (tau >= 2) total += lambda * smoothness_term(z, traj.spaces[tau - 2]);
  }
  return total;
}

double local_objective(const GraphSnapshot& g, const LatentSpace& z, const LatentSpace* z_prev,
                       double lambda) {
  double total = reconstruction_loss(g, z);
  if (z_prev != nullptr) {
    if (z_prev->node_count() != z.node_count() || z_prev->dim() != z.dim())
      throw ContractViolation("local_objective: previous space shape mismatch");
    total += lambda * smoothness_term(z, *z_prev);
  }
  return total;
}

void gradient_node(const GraphSnapshot& g, const LatentSpace& z, NodeId u, const double* prev_row,
                   const double* next_row, double lambda, std::span<const double> gram_zz,
                   std::span<double> out) {
  const std::size_t k = z.dim();
  auto r = z.row(u);
  for (std::size_t c = 0; c < k; ++c) {
    double zg = 0.0;
    for (std::size_t d = 0; d < k; ++d) zg += r[d] * gram_zz[d * k + c];
    out[c] = 2.0 * zg - 2.0 * r[c];
  }
  auto nb = g.neighbors(u);
  auto ws = g.weights(u);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    auto rv = z.row(nb[i]);
    const double w2 = 2.0 * ws[i];
    for (std::size_t c = 0; c < k; ++c) out[c] -= w2 * rv[c];
  }
  if (lambda != 0.0) {
    if (prev_row != nullptr)
      for (std::size_t c = 0; c < k; ++c) out[c] -= lambda * prev_row[c];
    if (next_row != nullptr)
      for (std::size_t c = 0; c < k; ++c) out[c] -= lambda * next_row[c];
  }
}

}  // namespace tlps
