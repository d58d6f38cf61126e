#include "tpd/svg.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <optional>
#include <string>

namespace tpd {

namespace {

const char* kFills[3] = {"#e41a1c", "#377eb8", "#4daf4a"};

void appendf(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  out += buf;
}

// Shared boundary segment of two touching rects, if any.
struct Seg {
  double x0, y0, x1, y1;
};
std::optional<Seg> touch_segment(const Rect& a, const Rect& b) {
  if (a.x1 == b.x0 || b.x1 == a.x0) {
    Coord x = a.x1 == b.x0 ? a.x1 : b.x1;
    Coord lo = std::max(a.y0, b.y0), hi = std::min(a.y1, b.y1);
    if (lo < hi) return Seg{double(x), double(lo), double(x), double(hi)};
  }
  if (a.y1 == b.y0 || b.y1 == a.y0) {
    Coord y = a.y1 == b.y0 ? a.y1 : b.y1;
    Coord lo = std::max(a.x0, b.x0), hi = std::min(a.x1, b.x1);
    if (lo < hi) return Seg{double(lo), double(y), double(hi), double(y)};
  }
  return std::nullopt;
}

}  // namespace

std::string render_svg(const LayoutSpec& spec, const DecompGraph& g,
                       const Coloring& c) {
  (void)spec;
  std::vector<Rect> all;
  for (const auto& v : g.verts) all.insert(all.end(), v.rects.begin(), v.rects.end());

  Rect bb = all.empty() ? Rect{0, 0, 1, 1} : bounding_box(all);
  const double margin = 16.0;
  const double legend_h = 28.0;
  const double target = 800.0;
  double ext = double(std::max<Coord>({bb.x1 - bb.x0, bb.y1 - bb.y0, 1}));
  double s = target / ext;
  double w = double(bb.x1 - bb.x0) * s + 2 * margin;
  double h = double(bb.y1 - bb.y0) * s + 2 * margin + legend_h;
  auto px = [&](double x) { return margin + (x - double(bb.x0)) * s; };
  auto py = [&](double y) { return margin + (double(bb.y1) - y) * s; };

  std::string out;
  appendf(out,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
          "viewBox=\"0 0 %.0f %.0f\">\n",
          w, h, w, h);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    int col = c.colors[v];
    for (const auto& r : g.verts[v].rects)
      appendf(out,
              "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
              "fill=\"%s\" fill-opacity=\"0.85\" stroke=\"#333333\" "
              "stroke-width=\"0.5\"/>\n",
              px(double(r.x0)), py(double(r.y1)), double(r.x1 - r.x0) * s,
              double(r.y1 - r.y0) * s, kFills[col]);
  }

  // Stitch cut-lines on the shared boundary of the two fragments.
  for (const auto& [u, v] : g.stitch_edges) {
    for (const auto& ra : g.verts[u].rects) {
      bool drawn = false;
      for (const auto& rb : g.verts[v].rects)
        if (auto seg = touch_segment(ra, rb)) {
          appendf(out,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"4 3\"/>\n",
                  px(seg->x0), py(seg->y0), px(seg->x1), py(seg->y1));
          drawn = true;
          break;
        }
      if (drawn) break;
    }
  }

  // Conflict markers at the midpoint of the closest rect pair.
  for (const auto& [u, v] : g.conflict_edges) {
    if (c.colors[u] != c.colors[v]) continue;
    Coord best = -1;
    double mx = 0, my = 0;
    for (const auto& ra : g.verts[u].rects)
      for (const auto& rb : g.verts[v].rects) {
        Coord d2 = rect_dist2(ra, rb);
        if (best < 0 || d2 < best) {
          best = d2;
          mx = (double(ra.x0 + ra.x1) + double(rb.x0 + rb.x1)) / 4.0;
          my = (double(ra.y0 + ra.y1) + double(rb.y0 + rb.y1)) / 4.0;
        }
      }
    appendf(out,
            "<circle class=\"conflict\" cx=\"%.2f\" cy=\"%.2f\" r=\"7\" fill=\"none\" "
            "stroke=\"#d60aa7\" stroke-width=\"2.5\"/>\n",
            px(mx), py(my));
  }

  // Legend.
  double ly = h - legend_h + 6.0;
  for (int m = 0; m < 3; ++m) {
    appendf(out,
            "<rect x=\"%.2f\" y=\"%.2f\" width=\"14\" height=\"14\" fill=\"%s\"/>\n",
            margin + m * 90.0, ly, kFills[m]);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"12\">"
            "mask %d</text>\n",
            margin + m * 90.0 + 18.0, ly + 11.0, m);
  }
  appendf(out,
          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"6\" fill=\"none\" stroke=\"#d60aa7\" "
          "stroke-width=\"2.5\"/>\n",
          margin + 3 * 90.0 + 7.0, ly + 7.0);
  appendf(out,
          "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"12\">"
          "conflict</text>\n",
          margin + 3 * 90.0 + 18.0, ly + 11.0);
  out += "</svg>\n";
  return out;
}

}  // namespace tpd
