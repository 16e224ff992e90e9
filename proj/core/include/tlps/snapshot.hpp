#ifndef TLPS_SNAPSHOT_HPP
#define TLPS_SNAPSHOT_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tlps {

using NodeId = std::uint32_t;

// Undirected edge with canonical orientation u < v.
struct WeightedEdge {
  NodeId u;
  NodeId v;
  double w;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// One time slice as a symmetric CSR adjacency. Rows are sorted by neighbor
// id; every undirected edge is stored in both endpoint rows with the same
// positive weight, and there are no diagonal entries.
class GraphSnapshot {
 public:
  GraphSnapshot() = default;

  // Builds from undirected edges; duplicate (u,v) pairs aggregate by summed
  // weight. Throws ContractViolation on self-loops, out-of-range ids, or
  // non-positive aggregated weights.
  static GraphSnapshot from_edges(std::size_t n, std::vector<WeightedEdge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return m_; }  // distinct undirected edges

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {nbr_.data() + offsets_[u], nbr_.data() + offsets_[u + 1]};
  }
  std::span<const double> weights(NodeId u) const {
    return {w_.data() + offsets_[u], w_.data() + offsets_[u + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const;
  double weight(NodeId u, NodeId v) const;  // 0 when absent

  // true when u's neighbor row (ids and weights) is identical in both
  bool row_equals(NodeId u, const GraphSnapshot& other) const;

  std::vector<WeightedEdge> edges() const;  // canonical u < v enumeration
  double total_weight() const;              // sum over distinct edges
  std::size_t memory_bytes() const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> offsets_;  // n+1
  std::vector<NodeId> nbr_;
  std::vector<double> w_;
};

// Ordered snapshot sequence over a shared node universe.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  explicit DynamicGraph(std::vector<GraphSnapshot> snapshots);

  std::size_t node_count() const { return snapshots_.empty() ? 0 : snapshots_.front().node_count(); }
  std::size_t snapshot_count() const { return snapshots_.size(); }

  // tau is 1-based to match the snapshot numbering used everywhere else
  const GraphSnapshot& snapshot(std::size_t tau) const { return snapshots_.at(tau - 1); }
  const std::vector<GraphSnapshot>& snapshots() const { return snapshots_; }

 private:
  std::vector<GraphSnapshot> snapshots_;
};

// Snapshot text format: "# snapshot <tau> <n> <m>" header, then one
// "u v w" line per undirected edge with u < v and 17-significant-digit w.
void save_snapshot(std::ostream& out, const GraphSnapshot& g, std::size_t tau);
void save_snapshot_file(const std::string& path, const GraphSnapshot& g, std::size_t tau);
std::pair<GraphSnapshot, std::size_t> load_snapshot(std::istream& in);
std::pair<GraphSnapshot, std::size_t> load_snapshot_file(const std::string& path);

}  // namespace tlps

#endif
