#include "tlps/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tlps/errors.hpp"

namespace tlps {

GraphSnapshot GraphSnapshot::from_edges(std::size_t n, std::vector<WeightedEdge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) throw ContractViolation("self-loop (" + std::to_string(e.u) + ") rejected");
    if (e.u >= n || e.v >= n)
      throw ContractViolation("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ") with n=" + std::to_string(n));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
  // aggregate duplicates by summed weight
  std::vector<WeightedEdge> agg;
  agg.reserve(edges.size());
  for (const auto& e : edges) {
    if (!agg.empty() && agg.back().u == e.u && agg.back().v == e.v)
      agg.back().w += e.w;
    else
      agg.push_back(e);
  }
  for (const auto& e : agg)
    if (!(e.w > 0.0))
      throw ContractViolation("non-positive edge weight on (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")");

  GraphSnapshot g;
  g.n_ = n;
  g.m_ = agg.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : agg) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t u = 0; u < n; ++u) g.offsets_[u + 1] += g.offsets_[u];
  g.nbr_.resize(2 * agg.size());
  g.w_.resize(2 * agg.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : agg) {
    g.nbr_[cursor[e.u]] = e.v;
    g.w_[cursor[e.u]++] = e.w;
    g.nbr_[cursor[e.v]] = e.u;
    g.w_[cursor[e.v]++] = e.w;
  }
  // rows come out sorted because edges were sorted by (u,v) and mirrored
  // inserts for row v arrive in increasing u; still verify in debug builds
#ifndef NDEBUG
  for (std::size_t u = 0; u < n; ++u) {
    auto nb = g.neighbors(static_cast<NodeId>(u));
    for (std::size_t i = 1; i < nb.size(); ++i)
      if (nb[i - 1] >= nb[i]) throw ContractViolation("internal: unsorted CSR row");
  }
#endif
  return g;
}

bool GraphSnapshot::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double GraphSnapshot::weight(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0.0;
  return w_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

bool GraphSnapshot::row_equals(NodeId u, const GraphSnapshot& other) const {
  auto a = neighbors(u), b = other.neighbors(u);
  if (a.size() != b.size()) return false;
  auto wa = weights(u), wb = other.weights(u);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i] || wa[i] != wb[i]) return false;
  return true;
}

std::vector<WeightedEdge> GraphSnapshot::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(m_);
  for (NodeId u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    auto ws = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i]) out.push_back({u, nb[i], ws[i]});
  }
  return out;
}

double GraphSnapshot::total_weight() const {
  double s = 0.0;
  for (NodeId u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    auto ws = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i]) s += ws[i];
  }
  return s;
}

std::size_t GraphSnapshot::memory_bytes() const {
  return offsets_.capacity() * sizeof(std::size_t) + nbr_.capacity() * sizeof(NodeId) +
         w_.capacity() * sizeof(double);
}

DynamicGraph::DynamicGraph(std::vector<GraphSnapshot> snapshots)
    : snapshots_(std::move(snapshots)) {
  if (snapshots_.empty()) throw ContractViolation("DynamicGraph needs at least one snapshot");
  const std::size_t n = snapshots_.front().node_count();
  for (const auto& s : snapshots_)
    if (s.node_count() != n)
      throw ContractViolation("all snapshots must share one node universe");
}

void save_snapshot(std::ostream& out, const GraphSnapshot& g, std::size_t tau) {
  out << "# snapshot " << tau << ' ' << g.node_count() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.w);
    out << buf;
  }
}

void save_snapshot_file(const std::string& path, const GraphSnapshot& g, std::size_t tau) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  save_snapshot(out, g, tau);
  if (!out.good()) throw Error("write failed: " + path);
}

std::pair<GraphSnapshot, std::size_t> load_snapshot(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t tau = 0, n = 0, m = 0;
  bool have_header = false;
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string kw;
      if (hs >> kw && kw == "snapshot" && (hs >> tau >> n >> m)) {
        have_header = true;
        edges.reserve(m);
      }
      continue;
    }
    std::istringstream ls(line);
    unsigned long u, v;
    double w = 1.0;
    if (!(ls >> u >> v)) throw ParseError("malformed snapshot edge line", lineno);
    if (!(ls >> w)) w = 1.0;
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  if (!have_header) throw ParseError("missing '# snapshot tau n m' header", lineno);
  auto g = GraphSnapshot::from_edges(n, std::move(edges));
  if (g.edge_count() != m)
    throw Error("snapshot header edge count " + std::to_string(m) + " does not match body " +
                std::to_string(g.edge_count()));
  return {std::move(g), tau};
}

std::pair<GraphSnapshot, std::size_t> load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return load_snapshot(in);
}

}  // namespace tlps
