#include "tlps/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "tlps/delta.hpp"
#include "tlps/errors.hpp"
#include "tlps/kernels.hpp"
#include "tlps/rng.hpp"

namespace tlps {

double score_pair(const LatentSpace& z, NodeId u, NodeId v) {
  if (u == v) throw ContractViolation("score_pair: diagonal pair requested");
  auto a = z.row(u);
  auto b = z.row(v);
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c];
  return s;
}

namespace {

std::uint64_t pair_key(NodeId u, NodeId v, std::size_t n) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * n + v;
}

// Distinct uniform draw of `count` items out of `pool` (by index); partial
// Fisher-Yates when the request is a large share of the pool, rejection
// otherwise.
std::vector<std::size_t> sample_indices(std::size_t pool, std::size_t count, CounterRng& rng) {
  std::vector<std::size_t> picked;
  picked.reserve(count);
  if (count * 2 >= pool) {
    std::vector<std::size_t> all(pool);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.next_below(pool - i);
      std::swap(all[i], all[j]);
      picked.push_back(all[i]);
    }
  } else {
    std::unordered_set<std::size_t> used;
    while (picked.size() < count) {
      const std::size_t j = rng.next_below(pool);
      if (used.insert(j).second) picked.push_back(j);
    }
  }
  return picked;
}

void append_sampled_edges(const std::vector<WeightedEdge>& edges, std::size_t count, bool linked,
                          CounterRng& rng, TestPairSet& out) {
  for (const std::size_t i : sample_indices(edges.size(), count, rng))
    out.pairs.push_back({edges[i].u, edges[i].v, linked});
}

// Uniform distinct non-adjacent pairs; `forbidden` lists graphs whose edges
// are excluded as well. Assumes count is feasible.
void append_complement_pairs(const GraphSnapshot& test, std::size_t count,
                             const std::vector<const GraphSnapshot*>& forbidden, CounterRng& rng,
                             TestPairSet& out, std::size_t complement_size) {
  const std::size_t n = test.node_count();
  std::unordered_set<std::uint64_t> used;
  auto excluded = [&](NodeId u, NodeId v) {
    if (test.has_edge(u, v)) return true;
    for (const auto* g : forbidden)
      if (g != nullptr && g->has_edge(u, v)) return true;
    return false;
  };
  if (count * 2 >= complement_size) {
    // dense request: enumerate the complement and subsample
    std::vector<std::pair<NodeId, NodeId>> pool;
    pool.reserve(complement_size);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!excluded(u, v)) pool.emplace_back(u, v);
    for (const std::size_t i : sample_indices(pool.size(), std::min(count, pool.size()), rng))
      out.pairs.push_back({pool[i].first, pool[i].second, false});
    return;
  }
  std::size_t added = 0;
  while (added < count) {
    const NodeId u = static_cast<NodeId>(rng.next_below(n));
    const NodeId v = static_cast<NodeId>(rng.next_below(n));
    if (u == v || excluded(u, v)) continue;
    if (!used.insert(pair_key(u, v, n)).second) continue;
    out.pairs.push_back({std::min(u, v), std::max(u, v), false});
    ++added;
  }
}

}  // namespace

TestPairSet sample_test_pairs(const GraphSnapshot& test, std::size_t count_per_class,
                              std::uint64_t seed, const GraphSnapshot* exclude_history) {
  const std::size_t n = test.node_count();
  TestPairSet out;
  out.mode = PairMode::AllLinks;
  out.seed = seed;
  out.requested_per_class = count_per_class;
  CounterRng rng(seed, 0x70616972ull);

  const auto edges = test.edges();
  if (edges.empty()) throw ContractViolation("sample_test_pairs: linked class is empty");
  const std::size_t linked = std::min(count_per_class, edges.size());
  append_sampled_edges(edges, linked, true, rng, out);
  out.linked_count = linked;

  std::size_t complement = n * (n - 1) / 2 - test.edge_count();
  if (exclude_history != nullptr) {
    // remove historical-only edges from the candidate complement
    for (const auto& e : exclude_history->edges())
      if (!test.has_edge(e.u, e.v)) --complement;
  }
  // an empty complement clamps to zero rather than erroring (complete graph)
  const std::size_t nonlinked = std::min(count_per_class, complement);
  append_complement_pairs(test, nonlinked, {exclude_history}, rng, out, complement);
  out.nonlinked_count = nonlinked;
  out.clamped = linked < count_per_class || nonlinked < count_per_class;
  return out;
}

TestPairSet sample_test_pairs_new(const GraphSnapshot& prev, const GraphSnapshot& test,
                                  std::size_t count_per_class, std::uint64_t seed,
                                  const GraphSnapshot* exclude_history) {
  TestPairSet out;
  out.mode = PairMode::NewLinks;
  out.seed = seed;
  out.requested_per_class = count_per_class;
  CounterRng rng(seed, 0x6e657770ull);

  const DeltaGraph delta = diff_snapshots(prev, test);
  if (delta.added_edges.empty())
    throw ContractViolation("sample_test_pairs_new: no added edges to sample");
  const std::size_t linked = std::min(count_per_class, delta.added_edges.size());
  append_sampled_edges(delta.added_edges, linked, true, rng, out);
  out.linked_count = linked;

  const std::size_t from_deleted = std::min(count_per_class, delta.removed_edges.size());
  append_sampled_edges(delta.removed_edges, from_deleted, false, rng, out);
  out.negatives_from_deleted = from_deleted;

  std::size_t top_up = count_per_class - from_deleted;
  if (top_up > 0) {
    const std::size_t n = test.node_count();
    // never linked in either snapshot
    std::size_t complement = n * (n - 1) / 2 - test.edge_count();
    for (const auto& e : prev.edges())
      if (!test.has_edge(e.u, e.v)) --complement;
    if (exclude_history != nullptr)
      for (const auto& e : exclude_history->edges())
        if (!test.has_edge(e.u, e.v) && !prev.has_edge(e.u, e.v)) --complement;
    top_up = std::min(top_up, complement);
    std::vector<const GraphSnapshot*> forbidden{&prev, exclude_history};
    append_complement_pairs(test, top_up, forbidden, rng, out, complement);
    out.negatives_never_linked = top_up;
  }
  out.nonlinked_count = from_deleted + out.negatives_never_linked;
  out.clamped = linked < count_per_class || out.nonlinked_count < count_per_class;
  return out;
}

void save_test_pairs(std::ostream& out, const TestPairSet& set) {
  for (const auto& p : set.pairs)
    out << p.u << ' ' << p.v << ' ' << (p.linked ? "linked" : "non-linked") << '\n';
}

namespace {

void check_two_classes(std::span<const int> labels) {
  bool pos = false, neg = false;
  for (int l : labels) (l != 0 ? pos : neg) = true;
  if (!pos) throw ContractViolation("AUC needs at least one positive");
  if (!neg) throw ContractViolation("AUC needs at least one negative");
}

}  // namespace

double auc_roc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ContractViolation("scores/labels size mismatch");
  check_two_classes(labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  std::size_t positives = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t t = i; t < j; ++t)
      if (labels[order[t]] != 0) {
        pos_rank_sum += mid_rank;
        ++positives;
      }
    i = j;
  }
  const std::size_t negatives = n - positives;
  const double p = static_cast<double>(positives);
  return (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

double auc_pr(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ContractViolation("scores/labels size mismatch");
  check_two_classes(labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t total_pos = 0;
  for (int l : labels) total_pos += l != 0;

  double area = 0.0;
  double prev_recall = 0.0;
  double prev_precision = 1.0;
  bool first = true;
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0)
        ++tp;
      else
        ++fp;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(total_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (first) {
      // flat extension down to recall 0 at the first threshold's precision
      prev_precision = precision;
      first = false;
    }
    area += 0.5 * (precision + prev_precision) * (recall - prev_recall);
    prev_recall = recall;
    prev_precision = precision;
    i = j;
  }
  return area;
}

double prediction_error(const DynamicGraph& g, const Trajectory& traj) {
  if (g.snapshot_count() < 2) throw ContractViolation("prediction_error needs t >= 2");
  if (traj.length() != g.snapshot_count())
    throw ContractViolation("prediction_error: trajectory length mismatch");
  double total = 0.0;
  for (std::size_t tau = 2; tau <= g.snapshot_count(); ++tau) {
    const double sq = reconstruction_loss(g.snapshot(tau), traj.spaces[tau - 2]);
    total += std::sqrt(std::max(sq, 0.0));
  }
  return total / static_cast<double>(g.snapshot_count() - 1);
}

double adamic_adar(const GraphSnapshot& aggregate, NodeId u, NodeId v) {
  auto nu = aggregate.neighbors(u);
  auto nv = aggregate.neighbors(v);
  double score = 0.0;
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      const std::size_t d = aggregate.degree(nu[i]);
      if (d > 1) score += 1.0 / std::log(static_cast<double>(d));
      ++i;
      ++j;
    }
  }
  return score;
}

GraphSnapshot aggregate_union(const DynamicGraph& g) {
  std::vector<WeightedEdge> all;
  for (const auto& s : g.snapshots())
    for (const auto& e : s.edges()) all.push_back({e.u, e.v, 1.0});
  std::sort(all.begin(), all.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const WeightedEdge& a, const WeightedEdge& b) {
                          return a.u == b.u && a.v == b.v;
                        }),
            all.end());
  return GraphSnapshot::from_edges(g.node_count(), std::move(all));
}

double previous_graph_baseline(const GraphSnapshot& g_t, NodeId u, NodeId v) {
  return g_t.weight(u, v);
}

}  // namespace tlps
