#ifndef TLPS_TEMPORAL_EDGES_HPP
#define TLPS_TEMPORAL_EDGES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tlps/snapshot.hpp"

namespace tlps {

struct TemporalRecord {
  NodeId u;
  NodeId v;
  double t;
  double w;
};

// Parsed interaction stream. Node ids are remapped to dense 0-based internal
// ids; external_ids keeps the inverse map for output. Duplicate (u,v,t)
// records are kept -- they carry interaction volume.
struct TemporalEdgeList {
  std::vector<TemporalRecord> records;
  std::size_t node_count = 0;
  std::vector<std::int64_t> external_ids;  // internal id -> external id
  std::size_t self_loops_dropped = 0;      // warning counter

  double t_min() const;
  double t_max() const;
};

// Whitespace-separated "u v t [w]" lines; '#' starts a comment line.
// Malformed lines raise ParseError with the 1-based line number; self-loops
// are dropped and counted.
TemporalEdgeList load_temporal_edges(std::istream& in);
TemporalEdgeList load_temporal_edges_file(const std::string& path);

void save_temporal_edges(std::ostream& out, const TemporalEdgeList& edges);

// Two-column "external-id internal-id" text.
void save_id_map(std::ostream& out, const TemporalEdgeList& edges);
void save_id_map_file(const std::string& path, const TemporalEdgeList& edges);

struct SliceStats {
  std::size_t empty_snapshots = 0;
  std::size_t out_of_range_records = 0;
};

// Snapshot tau collects interactions with t in (b[tau-1], b[tau]]; the first
// interval is closed on the left. Weights aggregate by sum, or collapse to
// 1.0 when binarize is set. All snapshots share the edge list's node count.
DynamicGraph slice_snapshots(const TemporalEdgeList& edges, std::size_t T, bool binarize,
                             SliceStats* stats = nullptr);
DynamicGraph slice_snapshots(const TemporalEdgeList& edges, const std::vector<double>& boundaries,
                             bool binarize, SliceStats* stats = nullptr);

}  // namespace tlps

#endif
