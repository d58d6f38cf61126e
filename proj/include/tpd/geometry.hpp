#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tpd {

// Coordinates are integer nanometers.  All geometric predicates below are exact
// as long as |coordinate| stays under ~1e9, which keeps squared distances inside
// the int64 range.
using Coord = std::int64_t;

struct Rect {
  Coord x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // x0 < x1, y0 < y1

  Coord width() const { return x1 - x0; }
  Coord height() const { return y1 - y0; }
  Coord area() const { return width() * height(); }

  bool operator==(const Rect&) const = default;
};

// Squared Euclidean distance between two rectangles, 0 if they touch or overlap.
Coord rect_dist2(const Rect& a, const Rect& b);

// Whether the closed rectangles share a boundary segment of positive length or
// an overlap of positive area.  Corner-only contact does not count.
bool rects_connected(const Rect& a, const Rect& b);

// Intersection; empty (zero-area) results are reported via has_value.
std::optional<Rect> rect_intersection(const Rect& a, const Rect& b);

// Exact area of the union of (possibly overlapping) rectangles.
Coord union_area(std::span<const Rect> rects);

Rect bounding_box(std::span<const Rect> rects);

struct Feature {
  std::string id;
  std::vector<Rect> rects;  // connected union, positive area
};

struct LayoutSpec {
  std::string units = "nm";
  std::optional<Coord> w_min;
  std::optional<Coord> s_min;
  std::optional<Coord> dis_m;  // overrides the derived value when present
  std::vector<Feature> features;
};

// Parses the layout interchange format.  Throws ParseError on malformed text and
// ValidationError on contract violations (unknown fields, duplicate ids,
// degenerate rects, disconnected features, missing process parameters).
LayoutSpec parse_layout(const std::string& text);

// Canonical serialization; parse_layout(render_layout(s)) reproduces s.
std::string render_layout(const LayoutSpec& spec);

// dis_m: two features closer than this cannot share a mask.
// Explicit dis_m wins; otherwise 2*w_min + 3*s_min.
Coord min_coloring_distance(const LayoutSpec& spec);

struct DensityGrid {
  Coord bin_side = 0;
  Coord stride = 0;
  Rect bbox{};                // layout bounding box the grid was built from
  Coord origin_x = 0;         // start of bin column 0 / row 0
  Coord origin_y = 0;
  std::uint32_t nx = 0, ny = 0;
  std::vector<Rect> bins;     // row-major (y outer, x inner), nx*ny entries
  double bin_area() const { return double(bin_side) * double(bin_side); }
};

// Overlapping square bins of side bin_factor*dis_m covering the layout bounding
// box.  stride = bin_side*(1-overlap); every bin intersects the box with
// positive area.  Empty layout -> zero bins.
DensityGrid build_density_grid(const LayoutSpec& spec, double bin_factor,
                               double overlap);

// Sparse per-bin density of one fragment: area(frag ∩ bin) / bin area.
// Only bins with nonzero intersection appear.
using SparseDensity = std::vector<std::pair<std::uint32_t, double>>;
SparseDensity fragment_bin_density(std::span<const Rect> frag,
                                   const DensityGrid& grid);

}  // namespace tpd
