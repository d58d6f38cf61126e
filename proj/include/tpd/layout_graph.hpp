#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tpd/exec.hpp"
#include "tpd/geometry.hpp"

namespace tpd {

// Conflict graph over features.  Vertices are local indices; vertex_ids maps
// them back to positions in LayoutSpec::features.
struct LayoutGraph {
  std::vector<std::uint32_t> vertex_ids;
  std::vector<std::vector<std::uint32_t>> adj;  // sorted local indices

  std::size_t vertex_count() const { return vertex_ids.size(); }
  std::size_t edge_count() const;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;  // u<v
};

// All pairs (i,j), i<j, whose rect sets are strictly closer than dis_m.
// Spatial hash with cell size dis_m; exact integer distance check per pair.
std::vector<std::pair<std::uint32_t, std::uint32_t>> find_close_pairs(
    const std::vector<std::vector<Rect>>& items, Coord dis_m, Exec exec);

LayoutGraph build_layout_graph(const LayoutSpec& spec, Coord dis_m,
                               Exec exec = default_exec());

// Connected components, each as its own graph; vertex ids stay global.
std::vector<LayoutGraph> split_independent_components(const LayoutGraph& g);

struct RemovalRecord {
  std::uint32_t feature;                 // removed feature index
  std::vector<std::uint32_t> neighbors;  // feature indices still alive at removal
};

struct SimplifyResult {
  LayoutGraph core;                   // empty or min degree >= 3
  std::vector<RemovalRecord> stack;   // removal order; recover back-to-front
};

// Iteratively strips vertices of degree <= 2 (smallest index first).
SimplifyResult simplify_low_degree(const LayoutGraph& g);

// Articulation points, as sorted feature indices.
std::vector<std::uint32_t> find_cut_vertices(const LayoutGraph& g);

struct BiconnectedSplit {
  std::vector<LayoutGraph> parts;  // edge-disjoint blocks; isolated vertices
                                   // become singleton parts
  struct Join {
    std::uint32_t part_a, part_b;
    std::uint32_t shared_feature;  // cut vertex present in both parts
  };
  std::vector<Join> tree;  // acyclic; spans all parts of a connected input
};

BiconnectedSplit split_biconnected(const LayoutGraph& g);

}  // namespace tpd
