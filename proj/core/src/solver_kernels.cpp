#include <algorithm>
#include <vector>

#include "solver_detail.hpp"
#include "tlps/errors.hpp"
#include "tlps/solver_config.hpp"
#include "tlps/solver_global.hpp"
#include "tlps/solver_local.hpp"

namespace tlps {

namespace detail {

void update_row(const GraphSnapshot& g, const LatentSpace& z, NodeId u, const double* temporal,
                double alpha, double lambda, std::span<const double> gram_zz,
                std::span<double> out, std::uint64_t* coord_ops) {
  const std::size_t k = z.dim();
  auto r = z.row(u);
  const double lead = 1.0 + 2.0 * alpha;
  if (temporal != nullptr) {
    const double al = alpha * lambda;
    for (std::size_t c = 0; c < k; ++c) out[c] = lead * r[c] + al * temporal[c];
  } else {
    for (std::size_t c = 0; c < k; ++c) out[c] = lead * r[c];
  }
  auto nb = g.neighbors(u);
  auto ws = g.weights(u);
  std::uint64_t ops = k;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    auto rv = z.row(nb[i]);
    const double c2aw = 2.0 * alpha * ws[i];
    for (std::size_t c = 0; c < k; ++c) out[c] += c2aw * rv[c];
    ops += k;
  }
  const double a2 = 2.0 * alpha;
  for (std::size_t c = 0; c < k; ++c) {
    double zg = 0.0;
    for (std::size_t d = 0; d < k; ++d) zg += r[d] * gram_zz[d * k + c];
    out[c] -= a2 * zg;
    ops += k;
  }
  for (std::size_t c = 0; c < k; ++c) out[c] = std::max(out[c], 0.0);
  ops += k;
  if (coord_ops != nullptr) *coord_ops += ops;
}

std::vector<std::vector<NodeId>> color_classes(const GraphSnapshot& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> color(n, 0);
  std::uint32_t max_color = 0;
  std::vector<char> used;
  for (NodeId u = 0; u < n; ++u) {
    used.assign(max_color + 2, 0);
    for (NodeId v : g.neighbors(u))
      if (v < u) used[color[v]] = 1;
    std::uint32_t c = 0;
    while (used[c]) ++c;
    color[u] = c;
    max_color = std::max(max_color, c);
  }
  std::vector<std::vector<NodeId>> classes(max_color + 1);
  for (NodeId u = 0; u < n; ++u) classes[color[u]].push_back(u);
  return classes;
}

}  // namespace detail

void update_row_global(const GraphSnapshot& g, const LatentSpace& z, NodeId u,
                       const double* prev_row, const double* next_row, double alpha,
                       double lambda, std::span<const double> gram_zz, std::span<double> out) {
  const double* temporal = nullptr;
  std::vector<double> buf;
  if (lambda != 0.0) {
    if (prev_row != nullptr && next_row != nullptr) {
      buf.resize(z.dim());
      for (std::size_t c = 0; c < buf.size(); ++c) buf[c] = prev_row[c] + next_row[c];
      temporal = buf.data();
    } else if (prev_row != nullptr) {
      temporal = prev_row;
    } else if (next_row != nullptr) {
      temporal = next_row;
    }
  }
  detail::update_row(g, z, u, temporal, alpha, lambda, gram_zz, out, nullptr);
}

void update_row_local(const GraphSnapshot& g, const LatentSpace& z, NodeId u,
                      const double* prev_row, double alpha, double lambda,
                      std::span<const double> gram_zz, std::span<double> out) {
  const double* temporal = (lambda != 0.0 && prev_row != nullptr) ? prev_row : nullptr;
  detail::update_row(g, z, u, temporal, alpha, lambda, gram_zz, out, nullptr);
}

void SolverConfig::validate() const {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (lambda < 0.0) throw ContractViolation("lambda must be >= 0");
  if (max_iters < 1) throw ContractViolation("max_iters must be >= 1");
  if (!(tol > 0.0)) throw ContractViolation("tol must be > 0");
  if (threads < 1) throw ContractViolation("threads must be >= 1");
}

double SolverConfig::zeta_for(std::size_t n) const {
  if (zeta >= 0.0) return zeta;
  if (n < 2) return 0.0;
  return std::sqrt(-std::log1p(-1.0 / static_cast<double>(n)));
}

double SolverConfig::delta_for(std::size_t n) const {
  if (delta >= 0.0) return delta;
  return 2.0 * zeta_for(n) / static_cast<double>(k);
}

}  // namespace tlps
