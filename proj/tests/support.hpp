#pragma once

#include <random>
#include <string>
#include <vector>

#include "tpd/decomp_graph.hpp"
#include "tpd/geometry.hpp"
#include "tpd/mapping.hpp"

namespace ts {

using namespace tpd;

// Single-rect bar features named f0, f1, ...
inline LayoutSpec bar_spec(const std::vector<Rect>& bars, Coord w_min = 10,
                           Coord s_min = 20) {
  LayoutSpec s;
  s.w_min = w_min;
  s.s_min = s_min;
  for (std::size_t k = 0; k < bars.size(); ++k)
    s.features.push_back({"f" + std::to_string(k), {bars[k]}});
  return s;
}

// Ten-feature layout exercising every pipeline stage: a stitch on the long bar
// "a" and on the wide rail "d", a multi-pin hook "c", a triangle e/g/i hanging
// off "a", and a peelable tail f-h-j below the rail.  dis_m pinned at 96.
inline LayoutSpec walk_spec() {
  LayoutSpec s;
  s.dis_m = 96;
  s.features = {
      {"a", {{0, 0, 10, 800}}},
      {"b", {{30, 0, 40, 200}, {30, 190, 180, 200}}},
      {"c", {{30, 400, 40, 592}, {30, 400, 205, 410}, {195, 5, 205, 410}}},
      {"d", {{-300, -90, 300, -80}}},
      {"e", {{30, 700, 40, 760}}},
      {"f", {{-280, -186, -270, -150}}},
      {"g", {{60, 700, 70, 760}}},
      {"h", {{-280, -300, -270, -240}}},
      {"i", {{120, 700, 130, 760}}},
      {"j", {{-280, -420, -270, -360}}},
  };
  return s;
}

// Random non-overlapping axis-aligned bars in a box.  dis_m = 2*10+3*20 = 80.
inline LayoutSpec random_layout(std::mt19937& rng, int min_feats, int max_feats,
                                Coord box = 400) {
  std::uniform_int_distribution<int> nf(min_feats, max_feats);
  std::uniform_int_distribution<Coord> len(40, 140), pos(0, box);
  std::bernoulli_distribution flip(0.5);
  int want = nf(rng);
  std::vector<Rect> bars;
  for (int tries = 0; int(bars.size()) < want && tries < 400; ++tries) {
    Coord l = len(rng), x = pos(rng), y = pos(rng);
    Rect r = flip(rng) ? Rect{x, y, x + 10, y + l} : Rect{x, y, x + l, y + 10};
    bool clear = true;
    for (const Rect& o : bars)
      if (r.x0 < o.x1 + 2 && o.x0 < r.x1 + 2 && r.y0 < o.y1 + 2 && o.y0 < r.y1 + 2) {
        clear = false;
        break;
      }
    if (clear) bars.push_back(r);
  }
  return bar_spec(bars);
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_pairs(
    const std::vector<std::vector<Rect>>& items, Coord dis_m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < items.size(); ++i)
    for (std::uint32_t j = i + 1; j < items.size(); ++j) {
      Coord best = -1;
      for (const Rect& a : items[i])
        for (const Rect& b : items[j]) {
          Coord d = rect_dist2(a, b);
          if (best < 0 || d < best) best = d;
        }
      if (best >= 0 && best < dis_m * dis_m) out.push_back({i, j});
    }
  return out;
}

// Synthetic decomposition graph: nf features of 1..3 fragments (consecutive
// fragments stitched), conflict edges sampled between different features.
inline DecompGraph random_dg(std::mt19937& rng, int nf_max, double p_conflict) {
  std::uniform_int_distribution<int> nf(2, nf_max), k(1, 3);
  std::bernoulli_distribution conf(p_conflict);
  DecompGraph g;
  int features = nf(rng);
  for (int f = 0; f < features; ++f) {
    int frags = k(rng);
    for (int i = 0; i < frags; ++i) {
      DGVertex v;
      v.members.push_back({std::uint32_t(f), std::uint32_t(i)});
      if (i > 0)
        g.stitch_edges.push_back(
            {std::uint32_t(g.verts.size() - 1), std::uint32_t(g.verts.size())});
      g.verts.push_back(std::move(v));
    }
  }
  for (std::uint32_t u = 0; u < g.verts.size(); ++u)
    for (std::uint32_t v = u + 1; v < g.verts.size(); ++v)
      if (g.verts[u].members[0].feature != g.verts[v].members[0].feature && conf(rng))
        g.conflict_edges.push_back({u, v});
  return g;
}

// Random mapping graph with densities over a tiny grid.
inline MappingGraph random_gm(std::mt19937& rng, int n, double p_edge,
                              int incompatible_pairs) {
  std::uniform_real_distribution<double> w(-1.0, 3.0), d(0.0, 0.5);
  std::bernoulli_distribution e(p_edge);
  std::uniform_int_distribution<int> pick(0, n - 1);
  MappingGraph gm;
  gm.bin_count = 4;
  for (int i = 0; i < n; ++i) {
    MGNode node;
    node.members = {std::uint32_t(i)};
    for (std::uint32_t b = 0; b < 4; ++b) {
      double dv = d(rng);
      if (dv > 0.1) {
        node.density.push_back({b, dv});
        node.weight += dv;
      }
    }
    gm.nodes.push_back(std::move(node));
    gm.vertex_to_node.push_back(std::uint32_t(i));
  }
  for (std::uint32_t a = 0; a < std::uint32_t(n); ++a)
    for (std::uint32_t b = a + 1; b < std::uint32_t(n); ++b)
      if (e(rng)) gm.edges.push_back({a, b, w(rng)});
  for (int t = 0; t < incompatible_pairs; ++t) {
    std::uint32_t a = std::uint32_t(pick(rng)), b = std::uint32_t(pick(rng));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    gm.incompatible.push_back({a, b});
  }
  std::sort(gm.incompatible.begin(), gm.incompatible.end());
  gm.incompatible.erase(std::unique(gm.incompatible.begin(), gm.incompatible.end()),
                        gm.incompatible.end());
  return gm;
}

struct EnumBest {
  double cut = 0.0;
  std::uint32_t violations = 0;
};

// Independent full 3^m enumeration (no symmetry pinning): fewest violations
// first, then max cut.
inline EnumBest enum_best_cut(const MappingGraph& gm) {
  const std::size_t m = gm.nodes.size();
  EnumBest best;
  if (m == 0) return best;
  std::vector<int> part(m, 0);
  bool have = false;
  for (;;) {
    double cut = cut_weight(gm, part);
    std::uint32_t viol = 0;
    for (const auto& [a, b] : gm.incompatible)
      if (part[a] == part[b]) ++viol;
    if (!have || viol < best.violations ||
        (viol == best.violations && cut > best.cut)) {
      have = true;
      best.cut = cut;
      best.violations = viol;
    }
    std::size_t i = m;
    while (i > 0) {
      if (part[i - 1] < 2) {
        ++part[i - 1];
        break;
      }
      part[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return best;
}

}  // namespace ts
