#pragma once

#include <string>

#include "tpd/decomp_graph.hpp"
#include "tpd/geometry.hpp"

namespace tpd {

// Deterministic SVG: one rect per fragment rect with one of three fixed mask
// fills, dashed cut-lines on stitch edges, a marker on every conflicting
// (same-color) conflict edge, and a legend.
std::string render_svg(const LayoutSpec& spec, const DecompGraph& g,
                       const Coloring& c);

}  // namespace tpd
