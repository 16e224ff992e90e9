#include "tlps/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tlps/errors.hpp"
#include "tlps/rng.hpp"

namespace tlps {

namespace {

constexpr std::size_t kNoDraw = std::numeric_limits<std::size_t>::max();

// Number of positions to advance until the next success of a Bernoulli(p)
// trial sequence (>= 1), sampled in O(1) via the geometric distribution.
std::size_t bernoulli_gap(CounterRng& rng, double p) {
  if (p >= 1.0) return 1;
  if (p <= 0.0) return kNoDraw;
  const double u = rng.next_double();
  const double g = std::floor(std::log1p(-u) / std::log1p(-p));
  if (g >= 1e18) return kNoDraw;
  return static_cast<std::size_t>(g) + 1;
}

void validate(const PlantedPartitionParams& p) {
  if (p.blocks == 0 || p.blocks > p.n)
    throw ContractViolation("blocks must be in [1, n]");
  if (!(p.p_out >= 0.0 && p.p_out < p.p_in && p.p_in <= 1.0) && !(p.p_in == p.p_out && p.p_in == 0.0))
    throw ContractViolation("need 0 <= p_out < p_in <= 1");
  if (p.drift_fraction < 0.0 || p.drift_fraction > 1.0)
    throw ContractViolation("drift_fraction must be in [0,1]");
  if (p.T < 1) throw ContractViolation("T must be >= 1");
}

struct StreamState {
  std::vector<NodeId> block_of;
  std::vector<std::vector<NodeId>> members;  // per block, ascending
  std::vector<WeightedEdge> edges;           // canonical u < v
};

// Sample partners for `u` from `candidates` (ascending node ids) at rate p,
// skipping candidates where keep() is false.
template <typename Keep>
void sample_partners(CounterRng& rng, NodeId u, const std::vector<NodeId>& candidates, double p,
                     Keep keep, std::vector<WeightedEdge>& out) {
  std::size_t pos = 0;  // 1-based virtual position after advancing
  for (;;) {
    const std::size_t gap = bernoulli_gap(rng, p);
    if (gap == kNoDraw || pos + gap > candidates.size()) return;
    pos += gap;
    const NodeId v = candidates[pos - 1];
    if (v == u || !keep(v)) continue;
    out.push_back({std::min(u, v), std::max(u, v), 1.0});
  }
}

// All intra-block pairs of one block, Bernoulli(p_in) via triangle walking.
void sample_block_pairs(CounterRng& rng, const std::vector<NodeId>& members, double p,
                        std::vector<WeightedEdge>& out) {
  const std::size_t s = members.size();
  if (s < 2) return;
  std::size_t i = 0, j = 0;  // j indexes the partner offset inside row i
  for (;;) {
    std::size_t gap = bernoulli_gap(rng, p);
    if (gap == kNoDraw) return;
    for (;;) {
      const std::size_t row_left = (s - 1 - i) - j;
      if (gap <= row_left) {
        j += gap;
        break;
      }
      gap -= row_left;
      ++i;
      j = 0;
      if (i >= s - 1) return;
    }
    out.push_back({members[i], members[i + j], 1.0});
  }
}

// Cross-block pairs: walk all n-choose-2 pairs at rate p_out and reject the
// intra-block hits (already covered at rate p_in).
void sample_cross_pairs(CounterRng& rng, const std::vector<NodeId>& block_of, double p,
                        std::vector<WeightedEdge>& out) {
  const std::size_t n = block_of.size();
  if (n < 2 || p <= 0.0) return;
  std::size_t i = 0, j = 0;
  for (;;) {
    std::size_t gap = bernoulli_gap(rng, p);
    if (gap == kNoDraw) return;
    for (;;) {
      const std::size_t row_left = (n - 1 - i) - j;
      if (gap <= row_left) {
        j += gap;
        break;
      }
      gap -= row_left;
      ++i;
      j = 0;
      if (i >= n - 1) return;
    }
    const NodeId u = static_cast<NodeId>(i);
    const NodeId v = static_cast<NodeId>(i + j);
    if (block_of[u] != block_of[v]) out.push_back({u, v, 1.0});
  }
}

void build_members(StreamState& st, std::size_t blocks) {
  st.members.assign(blocks, {});
  for (NodeId u = 0; u < st.block_of.size(); ++u) st.members[st.block_of[u]].push_back(u);
}

std::vector<std::vector<WeightedEdge>> generate_edge_sets(const PlantedPartitionParams& p) {
  validate(p);
  CounterRng rng(p.seed, /*stream=*/0x706c616e74ull);  // generator stream

  StreamState st;
  st.block_of.resize(p.n);
  const std::size_t base = p.blocks == 0 ? 0 : p.n / p.blocks;
  const std::size_t rem = p.blocks == 0 ? 0 : p.n % p.blocks;
  std::size_t next = 0;
  for (std::size_t b = 0; b < p.blocks; ++b) {
    const std::size_t size = base + (b < rem ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) st.block_of[next++] = static_cast<NodeId>(b);
  }
  build_members(st, p.blocks);

  for (const auto& m : st.members) sample_block_pairs(rng, m, p.p_in, st.edges);
  sample_cross_pairs(rng, st.block_of, p.p_out, st.edges);

  std::vector<std::vector<WeightedEdge>> result;
  result.push_back(st.edges);

  const std::size_t n_drift =
      static_cast<std::size_t>(std::llround(p.drift_fraction * static_cast<double>(p.n)));
  std::vector<NodeId> perm(p.n);
  std::iota(perm.begin(), perm.end(), NodeId{0});

  for (std::size_t tau = 2; tau <= p.T; ++tau) {
    // pick the drifting nodes by a partial Fisher-Yates shuffle
    std::vector<NodeId> drifted;
    drifted.reserve(n_drift);
    for (std::size_t i = 0; i < n_drift; ++i) {
      const std::size_t j = i + rng.next_below(p.n - i);
      std::swap(perm[i], perm[j]);
      drifted.push_back(perm[i]);
    }
    std::sort(drifted.begin(), drifted.end());
    for (NodeId u : drifted)
      st.block_of[u] = static_cast<NodeId>(rng.next_below(p.blocks));
    build_members(st, p.blocks);

    std::vector<char> is_drifted(p.n, 0);
    for (NodeId u : drifted) is_drifted[u] = 1;

    // edges not incident to a drifted node persist
    std::vector<WeightedEdge> kept;
    kept.reserve(st.edges.size());
    for (const auto& e : st.edges)
      if (!is_drifted[e.u] && !is_drifted[e.v]) kept.push_back(e);
    st.edges = std::move(kept);

    // resample all pairs with a drifted endpoint; a (u,v) pair with both
    // drifted is owned by the smaller id
    std::vector<NodeId> all(p.n);
    std::iota(all.begin(), all.end(), NodeId{0});
    for (NodeId u : drifted) {
      auto owned = [&](NodeId v) { return !is_drifted[v] || v > u; };
      const auto& mine = st.members[st.block_of[u]];
      sample_partners(rng, u, mine, p.p_in, owned, st.edges);
      sample_partners(rng, u, all, p.p_out,
                      [&](NodeId v) { return owned(v) && st.block_of[v] != st.block_of[u]; },
                      st.edges);
    }
    result.push_back(st.edges);
  }
  return result;
}

}  // namespace

DynamicGraph planted_partition_generate(const PlantedPartitionParams& p) {
  auto sets = generate_edge_sets(p);
  std::vector<GraphSnapshot> snaps;
  snaps.reserve(sets.size());
  for (auto& es : sets) snaps.push_back(GraphSnapshot::from_edges(p.n, std::move(es)));
  return DynamicGraph(std::move(snaps));
}

TemporalEdgeList planted_partition_edge_list(const PlantedPartitionParams& p) {
  auto sets = generate_edge_sets(p);
  TemporalEdgeList out;
  out.node_count = p.n;
  out.external_ids.resize(p.n);
  std::iota(out.external_ids.begin(), out.external_ids.end(), std::int64_t{0});
  for (std::size_t tau = 1; tau <= sets.size(); ++tau)
    for (const auto& e : sets[tau - 1])
      out.records.push_back({e.u, e.v, static_cast<double>(tau) - 0.5, e.w});
  return out;
}

}  // namespace tlps
