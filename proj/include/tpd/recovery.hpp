#pragma once

#include <cstdint>
#include <vector>

#include "tpd/decomp_graph.hpp"
#include "tpd/layout_graph.hpp"

namespace tpd {

// Per-part coloring at fragment granularity, ready for tree merging.
struct PartColoring {
  std::vector<std::pair<FragKey, int>> frag_colors;
  std::size_t feature_count = 0;  // drives root selection, largest wins
};

struct PartJoin {
  std::uint32_t part_a, part_b;   // indices into the parts vector
  std::uint32_t shared_feature;   // cut vertex; single-fragment by construction
};

// Walks the part forest breadth-first, one tree root per connected group
// (largest part first, processed in ascending root index order).  Roots get
// the color permutation minimizing the running du_sum; children are limited
// to permutations matching the already-fixed shared vertex.  Writes colors
// into `colors`, indexed like g.verts.
void merge_component_colorings(const DecompGraph& g,
                               const std::vector<PartColoring>& parts,
                               const std::vector<PartJoin>& joins,
                               std::vector<int>& colors);

// Pops each stack back-to-front, coloring the removed feature's single
// fragment.  A color is forbidden when any already-colored fragment of a
// snapshot neighbor lies strictly closer than dis_m.  Among legal colors the
// du_sum-minimizing one wins, ties to the lowest index.  When the neighbor
// fragments span all three colors, falls back to the color adding the fewest
// conflicts; returns the number of conflicts forced that way (normally 0).
std::uint32_t recover_removed_vertices(const DecompGraph& g,
                                       const std::vector<std::vector<RemovalRecord>>& stacks,
                                       Coord dis_m, std::vector<int>& colors);

}  // namespace tpd
