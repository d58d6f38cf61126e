#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tpd/geometry.hpp"
#include "tpd/stitch.hpp"

namespace tpd {

struct FragKey {
  std::uint32_t feature = 0;  // index into LayoutSpec::features
  std::uint32_t index = 0;    // fragment index within the feature
  bool operator==(const FragKey&) const = default;
  auto operator<=>(const FragKey&) const = default;
};

struct DGVertex {
  std::vector<FragKey> members;  // singleton until clustering merges vertices
  std::vector<Rect> rects;
  SparseDensity density;  // per grid bin, normalized by bin area
};

struct DecompGraph {
  std::vector<DGVertex> verts;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> conflict_edges;  // u<v
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stitch_edges;    // u<v
  std::size_t bin_count = 0;

  std::vector<std::vector<std::uint32_t>> conflict_adj() const;
  std::vector<std::vector<std::uint32_t>> stitch_adj() const;
};

// Fragments are feature geometry cut at the stitch candidates; junction-joined
// pieces stay in one fragment.  Conflict edges are recomputed at fragment
// granularity (strictly closer than dis_m, different features); every candidate
// yields one stitch edge.  grid may be null when densities are not needed.
DecompGraph build_decomposition_graph(const LayoutSpec& spec,
                                      const std::vector<std::uint32_t>& features,
                                      const std::vector<StitchCandidate>& candidates,
                                      const DensityGrid* grid, Coord dis_m);

struct ClusterResult {
  DecompGraph graph;
  std::vector<std::uint32_t> orig_to_vertex;  // input vertex -> output vertex
};

// Repeatedly merges vertex pairs with identical conflict neighborhoods and no
// conflict edge between them; densities add up, internal stitch edges vanish.
ClusterResult cluster_vertices(const DecompGraph& g);

struct Coloring {
  std::vector<int> colors;  // per vertex; 0..2, -1 = unassigned
};

// Peel-and-pop trial: succeeds only with a zero-conflict zero-stitch coloring.
// Returns nullopt when the peel stalls or a pop cannot stay cost-free.
std::optional<Coloring> fast_color_trial(const DecompGraph& g);

}  // namespace tpd
