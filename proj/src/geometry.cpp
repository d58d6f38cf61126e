#include "tpd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "json.hpp"
#include "tpd/errors.hpp"

namespace tpd {

Coord rect_dist2(const Rect& a, const Rect& b) {
  Coord dx = std::max({Coord(0), a.x0 - b.x1, b.x0 - a.x1});
  Coord dy = std::max({Coord(0), a.y0 - b.y1, b.y0 - a.y1});
  return dx * dx + dy * dy;
}

bool rects_connected(const Rect& a, const Rect& b) {
  Coord ix0 = std::max(a.x0, b.x0), ix1 = std::min(a.x1, b.x1);
  Coord iy0 = std::max(a.y0, b.y0), iy1 = std::min(a.y1, b.y1);
  if (ix0 < ix1 && iy0 < iy1) return true;                  // overlap
  if (ix0 == ix1 && iy0 < iy1) return true;                 // shared vertical edge
  if (iy0 == iy1 && ix0 < ix1) return true;                 // shared horizontal edge
  return false;
}

std::optional<Rect> rect_intersection(const Rect& a, const Rect& b) {
  Rect r{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
         std::min(a.y1, b.y1)};
  if (r.x0 >= r.x1 || r.y0 >= r.y1) return std::nullopt;
  return r;
}

Coord union_area(std::span<const Rect> rects) {
  if (rects.empty()) return 0;
  std::vector<Coord> xs;
  xs.reserve(rects.size() * 2);
  for (const Rect& r : rects) {
    xs.push_back(r.x0);
    xs.push_back(r.x1);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Coord total = 0;
  std::vector<std::pair<Coord, Coord>> ys;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    Coord sx0 = xs[s], sx1 = xs[s + 1];
    ys.clear();
    for (const Rect& r : rects)
      if (r.x0 <= sx0 && r.x1 >= sx1) ys.emplace_back(r.y0, r.y1);
    if (ys.empty()) continue;
    std::sort(ys.begin(), ys.end());
    Coord covered = 0, lo = ys[0].first, hi = ys[0].second;
    for (auto [a, b] : ys) {
      if (a > hi) {
        covered += hi - lo;
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    covered += hi - lo;
    total += covered * (sx1 - sx0);
  }
  return total;
}

Rect bounding_box(std::span<const Rect> rects) {
  Rect b = rects.empty() ? Rect{} : rects[0];
  for (const Rect& r : rects) {
    b.x0 = std::min(b.x0, r.x0);
    b.y0 = std::min(b.y0, r.y0);
    b.x1 = std::max(b.x1, r.x1);
    b.y1 = std::max(b.y1, r.y1);
  }
  return b;
}

namespace {

using json = nlohmann::ordered_json;

Coord require_coord(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ValidationError(std::string(what) + " must be an integer");
  return j.get<Coord>();
}

void check_feature_connected(const Feature& f) {
  std::size_t n = f.rects.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rects_connected(f.rects[i], f.rects[j])) parent[find(i)] = find(j);
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) != find(0))
      throw ValidationError("feature '" + f.id + "' is not a connected region");
}

}  // namespace

LayoutSpec parse_layout(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("layout syntax error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("layout root must be an object");

  static const std::unordered_set<std::string> known{"units", "w_min", "s_min",
                                                     "dis_m", "features"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ValidationError("unknown top-level field '" + it.key() + "'");

  LayoutSpec spec;
  if (!j.contains("units") || !j["units"].is_string())
    throw ValidationError("missing or non-string 'units'");
  spec.units = j["units"].get<std::string>();
  if (spec.units != "nm")
    throw ValidationError("unsupported units '" + spec.units + "' (expected nm)");

  auto read_param = [&](const char* key) -> std::optional<Coord> {
    if (!j.contains(key)) return std::nullopt;
    Coord v = require_coord(j[key], key);
    if (v <= 0) throw ValidationError(std::string(key) + " must be positive");
    return v;
  };
  spec.w_min = read_param("w_min");
  spec.s_min = read_param("s_min");
  spec.dis_m = read_param("dis_m");
  if (!spec.dis_m && !(spec.w_min && spec.s_min))
    throw ValidationError("need dis_m or both w_min and s_min");

  if (!j.contains("features") || !j["features"].is_array())
    throw ValidationError("missing 'features' array");

  std::unordered_set<std::string> seen;
  for (const json& jf : j["features"]) {
    if (!jf.is_object()) throw ValidationError("feature must be an object");
    for (auto it = jf.begin(); it != jf.end(); ++it)
      if (it.key() != "id" && it.key() != "rects")
        throw ValidationError("unknown feature field '" + it.key() + "'");
    if (!jf.contains("id") || !jf["id"].is_string())
      throw ValidationError("feature missing string 'id'");
    Feature f;
    f.id = jf["id"].get<std::string>();
    if (f.id.empty()) throw ValidationError("feature id must be non-empty");
    if (!seen.insert(f.id).second)
      throw ValidationError("duplicate feature id '" + f.id + "'");
    if (!jf.contains("rects") || !jf["rects"].is_array() || jf["rects"].empty())
      throw ValidationError("feature '" + f.id + "' needs a non-empty rects array");
    for (const json& jr : jf["rects"]) {
      if (!jr.is_array() || jr.size() != 4)
        throw ValidationError("feature '" + f.id + "': rect must be [x0,y0,x1,y1]");
      Rect r{require_coord(jr[0], "x0"), require_coord(jr[1], "y0"),
             require_coord(jr[2], "x1"), require_coord(jr[3], "y1")};
      if (r.x0 >= r.x1 || r.y0 >= r.y1)
        throw ValidationError("feature '" + f.id + "' has a degenerate rect");
      f.rects.push_back(r);
    }
    check_feature_connected(f);
    spec.features.push_back(std::move(f));
  }
  return spec;
}

std::string render_layout(const LayoutSpec& spec) {
  json j;
  j["units"] = spec.units;
  if (spec.w_min) j["w_min"] = *spec.w_min;
  if (spec.s_min) j["s_min"] = *spec.s_min;
  if (spec.dis_m) j["dis_m"] = *spec.dis_m;
  j["features"] = json::array();
  for (const Feature& f : spec.features) {
    json jf;
    jf["id"] = f.id;
    jf["rects"] = json::array();
    for (const Rect& r : f.rects) jf["rects"].push_back({r.x0, r.y0, r.x1, r.y1});
    j["features"].push_back(std::move(jf));
  }
  return j.dump(2) + "\n";
}

Coord min_coloring_distance(const LayoutSpec& spec) {
  if (spec.dis_m) return *spec.dis_m;
  if (spec.w_min && spec.s_min) return 2 * *spec.w_min + 3 * *spec.s_min;
  throw ValidationError("need dis_m or both w_min and s_min");
}

DensityGrid build_density_grid(const LayoutSpec& spec, double bin_factor,
                               double overlap) {
  if (bin_factor <= 0) throw ValidationError("bin_factor must be positive");
  if (overlap < 0 || overlap >= 1)
    throw ValidationError("bin overlap must be in [0,1)");

  DensityGrid g;
  g.bin_side = std::max<Coord>(1, std::llround(bin_factor * double(min_coloring_distance(spec))));
  g.stride = std::max<Coord>(1, std::llround(double(g.bin_side) * (1.0 - overlap)));
  if (spec.features.empty()) return g;

  std::vector<Rect> all;
  for (const Feature& f : spec.features)
    all.insert(all.end(), f.rects.begin(), f.rects.end());
  g.bbox = bounding_box(all);

  // Bin starts are origin + i*stride for every i whose bin overlaps the
  // bounding box with positive area; i ranges over negatives too, so a
  // stride-of-half grid covers the box edge-to-edge.
  auto first = [&](Coord) { return -((g.bin_side - 1) / g.stride); };
  auto last = [&](Coord extent) { return (extent - 1) / g.stride; };
  Coord ix0 = first(g.bbox.width()), ix1 = last(g.bbox.width());
  Coord iy0 = first(g.bbox.height()), iy1 = last(g.bbox.height());
  g.origin_x = g.bbox.x0 + ix0 * g.stride;
  g.origin_y = g.bbox.y0 + iy0 * g.stride;
  g.nx = std::uint32_t(ix1 - ix0 + 1);
  g.ny = std::uint32_t(iy1 - iy0 + 1);
  g.bins.reserve(std::size_t(g.nx) * g.ny);
  for (Coord iy = iy0; iy <= iy1; ++iy)
    for (Coord ix = ix0; ix <= ix1; ++ix) {
      Coord x = g.bbox.x0 + ix * g.stride;
      Coord y = g.bbox.y0 + iy * g.stride;
      g.bins.push_back(Rect{x, y, x + g.bin_side, y + g.bin_side});
    }
  return g;
}

SparseDensity fragment_bin_density(std::span<const Rect> frag,
                                   const DensityGrid& grid) {
  SparseDensity out;
  if (grid.bins.empty() || frag.empty()) return out;
  Rect fb = bounding_box(frag);
  // Candidate bin index range from the fragment bounding box.
  auto lo_idx = [&](Coord v, Coord origin) {
    Coord i = (v - origin - grid.bin_side) / grid.stride;  // may undershoot
    return std::max<Coord>(i - 1, 0);
  };
  auto hi_idx = [&](Coord v, Coord origin, Coord n) {
    Coord i = (v - origin) / grid.stride + 1;
    return std::min<Coord>(i, n - 1);
  };
  Coord bx0 = lo_idx(fb.x0, grid.origin_x), bx1 = hi_idx(fb.x1, grid.origin_x, grid.nx);
  Coord by0 = lo_idx(fb.y0, grid.origin_y), by1 = hi_idx(fb.y1, grid.origin_y, grid.ny);

  std::vector<Rect> clipped;
  for (Coord by = by0; by <= by1; ++by)
    for (Coord bx = bx0; bx <= bx1; ++bx) {
      std::uint32_t k = std::uint32_t(by) * grid.nx + std::uint32_t(bx);
      const Rect& bin = grid.bins[k];
      clipped.clear();
      for (const Rect& r : frag)
        if (auto c = rect_intersection(r, bin)) clipped.push_back(*c);
      if (clipped.empty()) continue;
      Coord a = union_area(clipped);
      if (a > 0) out.emplace_back(k, double(a) / grid.bin_area());
    }
  return out;
}

}  // namespace tpd
