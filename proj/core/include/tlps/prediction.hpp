#ifndef TLPS_PREDICTION_HPP
#define TLPS_PREDICTION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlps/latent_space.hpp"
#include "tlps/snapshot.hpp"

namespace tlps {

// Link likelihood of (u,v): dot of the two latent rows. Symmetric, in [0,1]
// for valid spaces. u == v is a contract violation (diagonals are excluded
// from the model).
double score_pair(const LatentSpace& z, NodeId u, NodeId v);

enum class PairMode { AllLinks, NewLinks };

struct TestPair {
  NodeId u;
  NodeId v;
  bool linked;
};

struct TestPairSet {
  std::vector<TestPair> pairs;  // linked block first, then non-linked
  PairMode mode = PairMode::AllLinks;
  std::uint64_t seed = 0;
  std::size_t requested_per_class = 0;
  std::size_t linked_count = 0;
  std::size_t nonlinked_count = 0;
  bool clamped = false;  // a class ran out of candidates
  // new-links negative composition
  std::size_t negatives_from_deleted = 0;
  std::size_t negatives_never_linked = 0;
};

// All-links protocol: linked pairs uniform over E(test), non-linked uniform
// over the off-diagonal complement (minus `exclude_history` edges when
// given). Pairs are distinct; a class short on candidates is clamped with
// the clamped flag set. Throws when a class is empty.
TestPairSet sample_test_pairs(const GraphSnapshot& test, std::size_t count_per_class,
                              std::uint64_t seed, const GraphSnapshot* exclude_history = nullptr);

// New-links protocol: positives uniform over edges added between prev and
// test; negatives prefer deleted edges and top up with pairs never linked in
// either snapshot.
TestPairSet sample_test_pairs_new(const GraphSnapshot& prev, const GraphSnapshot& test,
                                  std::size_t count_per_class, std::uint64_t seed,
                                  const GraphSnapshot* exclude_history = nullptr);

void save_test_pairs(std::ostream& out, const TestPairSet& set);

// Rank-statistic AUC-ROC (ties count 1/2) and trapezoidal AUC-PR over the
// precision-recall staircase. Both throw on single-class input.
double auc_roc(std::span<const double> scores, std::span<const int> labels);
double auc_pr(std::span<const double> scores, std::span<const int> labels);

// (1/(t-1)) sum_{tau=2..t} ||G_tau - Z_{tau-1} Z_{tau-1}^T||_F over
// off-diagonal entries, computed sparsely.
double prediction_error(const DynamicGraph& g, const Trajectory& traj);

// Degree-weighted common-neighbor heuristic over an aggregated training
// graph; common neighbors of degree <= 1 contribute nothing.
double adamic_adar(const GraphSnapshot& aggregate, NodeId u, NodeId v);

// Union of all snapshots with binary weights (the AA training input).
GraphSnapshot aggregate_union(const DynamicGraph& g);

// Score of the "repeat the last snapshot" baseline: the stored edge weight.
double previous_graph_baseline(const GraphSnapshot& g_t, NodeId u, NodeId v);

}  // namespace tlps

#endif
