#include "tlps/temporal_edges.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "tlps/errors.hpp"

namespace tlps {

namespace {

// splits on runs of spaces/tabs; returns views into `line`
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_i64(std::string_view tok, std::size_t lineno, const char* what) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(std::string("expected integer ") + what + ", got '" + std::string(tok) + "'",
                     lineno);
  return v;
}

double parse_f64(std::string_view tok, std::size_t lineno, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(std::string("expected real ") + what + ", got '" + std::string(tok) + "'",
                     lineno);
  return v;
}

}  // namespace

double TemporalEdgeList::t_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::min(m, r.t);
  return m;
}

double TemporalEdgeList::t_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::max(m, r.t);
  return m;
}

TemporalEdgeList load_temporal_edges(std::istream& in) {
  TemporalEdgeList out;
  std::unordered_map<std::int64_t, NodeId> id_map;
  std::string line;
  std::size_t lineno = 0;

  auto intern = [&](std::int64_t ext) -> NodeId {
    auto [it, inserted] = id_map.try_emplace(ext, static_cast<NodeId>(out.external_ids.size()));
    if (inserted) out.external_ids.push_back(ext);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (auto pos = sv.find('#'); pos != std::string_view::npos) sv = sv.substr(0, pos);
    auto toks = tokenize(sv);
    if (toks.empty()) continue;
    if (toks.size() < 3 || toks.size() > 4)
      throw ParseError("expected 'u v t [w]', got " + std::to_string(toks.size()) + " fields",
                       lineno);
    const std::int64_t ue = parse_i64(toks[0], lineno, "node id u");
    const std::int64_t ve = parse_i64(toks[1], lineno, "node id v");
    const double t = parse_f64(toks[2], lineno, "timestamp");
    const double w = toks.size() == 4 ? parse_f64(toks[3], lineno, "weight") : 1.0;
    if (!std::isfinite(t)) throw ParseError("non-finite timestamp", lineno);
    if (!(w > 0.0)) throw ParseError("weight must be positive", lineno);
    if (ue == ve) {
      ++out.self_loops_dropped;
      continue;
    }
    out.records.push_back({intern(ue), intern(ve), t, w});
  }
  out.node_count = out.external_ids.size();
  return out;
}

TemporalEdgeList load_temporal_edges_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return load_temporal_edges(in);
}

void save_temporal_edges(std::ostream& out, const TemporalEdgeList& edges) {
  char buf[128];
  for (const auto& r : edges.records) {
    std::snprintf(buf, sizeof(buf), "%lld %lld %.17g %.17g\n",
                  static_cast<long long>(edges.external_ids[r.u]),
                  static_cast<long long>(edges.external_ids[r.v]), r.t, r.w);
    out << buf;
  }
}

void save_id_map(std::ostream& out, const TemporalEdgeList& edges) {
  for (std::size_t i = 0; i < edges.external_ids.size(); ++i)
    out << edges.external_ids[i] << ' ' << i << '\n';
}

void save_id_map_file(const std::string& path, const TemporalEdgeList& edges) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  save_id_map(out, edges);
}

namespace {

DynamicGraph slice_impl(const TemporalEdgeList& edges, const std::vector<double>& b, bool binarize,
                        SliceStats* stats) {
  const std::size_t T = b.size() - 1;
  std::vector<std::vector<WeightedEdge>> per_tau(T);
  std::size_t out_of_range = 0;
  for (const auto& r : edges.records) {
    // right-closed intervals, first one closed on the left
    if (r.t < b.front() || r.t > b.back()) {
      ++out_of_range;
      continue;
    }
    std::size_t tau;
    if (r.t == b.front()) {
      tau = 0;
    } else {
      // first boundary with b[tau] >= t, i.e. t in (b[tau-1], b[tau]]
      tau = static_cast<std::size_t>(std::lower_bound(b.begin() + 1, b.end(), r.t) -
                                     (b.begin() + 1));
    }
    if (tau >= T) tau = T - 1;  // t == b.back() with repeated boundaries
    per_tau[tau].push_back({r.u, r.v, r.w});
  }

  std::vector<GraphSnapshot> snaps;
  snaps.reserve(T);
  std::size_t empty = 0;
  for (auto& es : per_tau) {
    auto g = GraphSnapshot::from_edges(edges.node_count, std::move(es));
    if (binarize && g.edge_count() > 0) {
      auto uniform = g.edges();
      for (auto& e : uniform) e.w = 1.0;
      g = GraphSnapshot::from_edges(edges.node_count, std::move(uniform));
    }
    if (g.edge_count() == 0) ++empty;
    snaps.push_back(std::move(g));
  }
  if (stats) {
    stats->empty_snapshots = empty;
    stats->out_of_range_records = out_of_range;
  }
  return DynamicGraph(std::move(snaps));
}

}  // namespace

DynamicGraph slice_snapshots(const TemporalEdgeList& edges, std::size_t T, bool binarize,
                             SliceStats* stats) {
  if (T < 1) throw ContractViolation("snapshot count must be >= 1");
  double lo = edges.t_min(), hi = edges.t_max();
  if (edges.records.empty()) lo = hi = 0.0;
  std::vector<double> b(T + 1);
  for (std::size_t i = 0; i <= T; ++i)
    b[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(T));
  b.front() = lo;
  b.back() = hi;
  return slice_impl(edges, b, binarize, stats);
}

DynamicGraph slice_snapshots(const TemporalEdgeList& edges, const std::vector<double>& boundaries,
                             bool binarize, SliceStats* stats) {
  if (boundaries.size() < 2) throw ContractViolation("need at least two boundaries");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (!(boundaries[i] >= boundaries[i - 1]))
      throw ContractViolation("boundaries must be non-decreasing");
  return slice_impl(edges, boundaries, binarize, stats);
}

}  // namespace tlps
