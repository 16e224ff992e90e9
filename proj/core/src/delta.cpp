#include "tlps/delta.hpp"

#include <algorithm>

#include "tlps/errors.hpp"

namespace tlps {

DeltaGraph diff_snapshots(const GraphSnapshot& prev, const GraphSnapshot& next) {
  if (prev.node_count() != next.node_count())
    throw ContractViolation("diff_snapshots: node counts differ (" +
                            std::to_string(prev.node_count()) + " vs " +
                            std::to_string(next.node_count()) + ")");
  DeltaGraph d;
  const std::size_t n = prev.node_count();
  std::vector<char> touched(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    auto pn = prev.neighbors(u);
    auto pw = prev.weights(u);
    auto nn = next.neighbors(u);
    auto nw = next.weights(u);
    // merge-scan the two sorted rows, keeping only canonical u < v pairs
    std::size_t i = 0, j = 0;
    while (i < pn.size() || j < nn.size()) {
      if (j == nn.size() || (i < pn.size() && pn[i] < nn[j])) {
        if (u < pn[i]) d.removed_edges.push_back({u, pn[i], pw[i]});
        touched[u] = touched[pn[i]] = 1;
        ++i;
      } else if (i == pn.size() || nn[j] < pn[i]) {
        if (u < nn[j]) d.added_edges.push_back({u, nn[j], nw[j]});
        touched[u] = touched[nn[j]] = 1;
        ++j;
      } else {
        if (pw[i] != nw[j]) {
          if (u < pn[i]) d.weight_changed_edges.push_back({u, pn[i], nw[j]});
          touched[u] = touched[pn[i]] = 1;
        }
        ++i;
        ++j;
      }
    }
  }
  for (NodeId u = 0; u < n; ++u)
    if (touched[u]) d.changed_nodes.push_back(u);
  return d;
}

GraphSnapshot apply_delta(const GraphSnapshot& prev, const DeltaGraph& delta) {
  auto edges = prev.edges();
  auto key_less = [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  };
  auto drop = [&](const std::vector<WeightedEdge>& victims) {
    for (const auto& v : victims) {
      auto it = std::lower_bound(edges.begin(), edges.end(), v, key_less);
      if (it == edges.end() || it->u != v.u || it->v != v.v)
        throw ContractViolation("apply_delta: edge to modify is absent");
      edges.erase(it);
    }
  };
  drop(delta.removed_edges);
  for (const auto& e : delta.weight_changed_edges) {
    auto it = std::lower_bound(edges.begin(), edges.end(), e, key_less);
    if (it == edges.end() || it->u != e.u || it->v != e.v)
      throw ContractViolation("apply_delta: edge to reweight is absent");
    it->w = e.w;
  }
  for (const auto& e : delta.added_edges) edges.push_back(e);
  return GraphSnapshot::from_edges(prev.node_count(), std::move(edges));
}

}  // namespace tlps
