#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "tpd/decomp_graph.hpp"
#include "tpd/dense.hpp"

namespace tpd {

// Disjoint sets over decomposition-graph vertices plus a set of pairs that
// must never share a set.  Incompatibility pairs are kept normalized on
// current representatives.
class MergeState {
 public:
  explicit MergeState(std::size_t n);

  std::uint32_t find(std::uint32_t v);
  bool same(std::uint32_t u, std::uint32_t v);
  bool incompatible(std::uint32_t u, std::uint32_t v);
  // Returns false (state unchanged) when the pair is incompatible.
  bool union_sets(std::uint32_t u, std::uint32_t v);
  // Returns false when the pair is already merged; the unavoidable conflict
  // is counted, not enforced.
  bool separate(std::uint32_t u, std::uint32_t v);
  // Current incompatibility pairs on representatives, ascending.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> incompatible_pairs() const;

  std::size_t size() const { return parent_.size(); }
  std::uint32_t unions = 0;
  std::uint32_t separations = 0;
  std::uint32_t skipped_unions = 0;          // would join incompatibles
  std::uint32_t unavoidable_separations = 0; // already merged

 private:
  void renormalize();
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> rank_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> incompat_;
};

MergeState threshold_merge(const Mat& x, const DecompGraph& g, double th_unn,
                           double th_sp);

struct MGNode {
  std::vector<std::uint32_t> members;  // decomposition-graph vertex ids, ascending
  SparseDensity density;               // per-bin sum over members
  double weight = 0.0;                 // total density mass, drives greedy order
};

struct MGEdge {
  std::uint32_t a, b;  // node indices, a < b
  double w;            // cost of putting both groups in one color
};

struct MappingGraph {
  std::vector<MGNode> nodes;
  std::vector<MGEdge> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> incompatible;  // node pairs, a < b
  std::vector<std::uint32_t> vertex_to_node;
  std::uint32_t bin_count = 0;
};

// Edge weight between groups A and B:
//   #conflict(A,B) - alpha * #stitch(A,B) + kappa * sum over vague cross
//   pairs of (0.5 - X_uv)
// where a pair is vague when thresholding left it untouched.  Groups with no
// cross edges and no vague pairs get no edge.
MappingGraph build_mapping_graph(MergeState& ms, const DecompGraph& g, const Mat& x,
                                 double alpha, double kappa, double th_unn,
                                 double th_sp);

struct Partition {
  std::vector<int> part;  // node -> {0,1,2}
  double cut = 0.0;
  std::uint32_t violations = 0;  // incompatible pairs left uncut
  bool feasible = true;
};

double cut_weight(const MappingGraph& gm, const std::vector<int>& part);
double partition_du_sum(const MappingGraph& gm, const std::vector<int>& part);

// Exhaustive max-cut over <= backtrack_limit nodes, node 0 pinned to part 0.
// Order of preference: fewest incompatibility violations, largest cut,
// smallest du_sum, lexicographically smallest part vector.
Partition backtrack_threeway(const MappingGraph& gm);

// FM-style three-way max-cut refinement.  Deterministic; seed reserved.
Partition fm_threeway(const MappingGraph& gm, int passes, double beta_m,
                      std::uint64_t seed = 0);

Coloring partition_to_coloring(const MappingGraph& gm, const std::vector<int>& part,
                               std::size_t vertex_count);

}  // namespace tpd
