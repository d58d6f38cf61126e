#include "tpd/decomp_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tpd/errors.hpp"
#include "tpd/layout_graph.hpp"

namespace tpd {

std::vector<std::vector<std::uint32_t>> DecompGraph::conflict_adj() const {
  std::vector<std::vector<std::uint32_t>> adj(verts.size());
  for (auto [u, v] : conflict_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<std::vector<std::uint32_t>> DecompGraph::stitch_adj() const {
  std::vector<std::vector<std::uint32_t>> adj(verts.size());
  for (auto [u, v] : stitch_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

namespace {

struct Piece {
  Rect rect;
  std::size_t run = 0;
  std::size_t slot = 0;  // position along the run after cutting
};

// Fragments of one feature: runs cut at candidate positions, then re-joined at
// junctions.  Pieces separated by a cut never rejoin directly; a cut produces
// exactly one stitch edge between the two adjacent pieces.
struct FeatureFragments {
  std::vector<std::vector<Rect>> fragments;              // per fragment geometry
  std::vector<std::pair<std::size_t, std::size_t>> stitches;  // fragment pairs
};

FeatureFragments cut_feature(const Feature& f,
                             const std::vector<StitchCandidate>& cands) {
  auto runs = decompose_multipin(f);
  std::vector<Piece> pieces;
  std::vector<std::pair<std::size_t, std::size_t>> cut_pairs;  // piece indices

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const TwoPinRun& run = runs[r];
    std::vector<Coord> cuts;
    for (const StitchCandidate& c : cands)
      if (c.run == run.rect) cuts.push_back(c.pos);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Coord lo = run.vertical ? run.rect.y0 : run.rect.x0;
    std::size_t slot = 0;
    auto make_piece = [&](Coord a, Coord b) {
      Rect pr = run.rect;
      if (run.vertical) {
        pr.y0 = a;
        pr.y1 = b;
      } else {
        pr.x0 = a;
        pr.x1 = b;
      }
      pieces.push_back({pr, r, slot++});
    };
    for (Coord c : cuts) {
      make_piece(lo, c);
      lo = c;
    }
    make_piece(lo, run.vertical ? run.rect.y1 : run.rect.x1);
    for (std::size_t s = 0; s + 1 < slot; ++s) {
      std::size_t base = pieces.size() - slot;
      cut_pairs.emplace_back(base + s, base + s + 1);
    }
  }

  // Union-find over pieces; junction contact joins, cut boundaries do not.
  std::vector<std::size_t> parent(pieces.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].run == pieces[j].run) continue;
      if (rects_connected(pieces[i].rect, pieces[j].rect)) parent[find(i)] = find(j);
    }

  // Deterministic fragment order: by lowest (y0, x0) corner of the group.
  std::map<std::size_t, std::size_t> root_to_frag;
  std::vector<std::pair<Rect, std::size_t>> order;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (find(i) == i) order.emplace_back(pieces[i].rect, i);
  for (auto& [rect, root] : order)
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (find(i) == root) {
        rect.y0 = std::min(rect.y0, pieces[i].rect.y0);
        rect.x0 = std::min(rect.x0, pieces[i].rect.x0);
      }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.y0, a.first.x0) < std::tie(b.first.y0, b.first.x0);
  });

  FeatureFragments out;
  for (auto& [rect, root] : order) {
    root_to_frag[root] = out.fragments.size();
    out.fragments.emplace_back();
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    out.fragments[root_to_frag[find(i)]].push_back(pieces[i].rect);

  for (auto [p, q] : cut_pairs) {
    std::size_t fp = root_to_frag[find(p)], fq = root_to_frag[find(q)];
    if (fp == fq) continue;  // looped geometry; the cut separates nothing
    out.stitches.emplace_back(std::min(fp, fq), std::max(fp, fq));
  }
  return out;
}

}  // namespace

DecompGraph build_decomposition_graph(const LayoutSpec& spec,
                                      const std::vector<std::uint32_t>& features,
                                      const std::vector<StitchCandidate>& candidates,
                                      const DensityGrid* grid, Coord dis_m) {
  DecompGraph g;
  g.bin_count = grid ? grid->bins.size() : 0;

  std::vector<std::uint32_t> frag_feature;  // per vertex
  std::vector<std::vector<Rect>> frag_rects;
  for (std::uint32_t fi : features) {
    const Feature& f = spec.features.at(fi);
    std::vector<StitchCandidate> mine;
    for (const StitchCandidate& c : candidates)
      if (c.feature == fi) mine.push_back(c);
    FeatureFragments ff = cut_feature(f, mine);
    std::uint32_t base = std::uint32_t(g.verts.size());
    for (std::uint32_t k = 0; k < ff.fragments.size(); ++k) {
      DGVertex v;
      v.members.push_back({fi, k});
      v.rects = ff.fragments[k];
      if (grid) v.density = fragment_bin_density(v.rects, *grid);
      g.verts.push_back(std::move(v));
      frag_feature.push_back(fi);
      frag_rects.push_back(g.verts.back().rects);
    }
    for (auto [p, q] : ff.stitches)
      g.stitch_edges.emplace_back(base + std::uint32_t(p), base + std::uint32_t(q));
  }

  for (auto [u, v] : find_close_pairs(frag_rects, dis_m, Exec::serial))
    if (frag_feature[u] != frag_feature[v]) g.conflict_edges.emplace_back(u, v);

  std::sort(g.conflict_edges.begin(), g.conflict_edges.end());
  std::sort(g.stitch_edges.begin(), g.stitch_edges.end());
  return g;
}

namespace {

SparseDensity merge_density(const SparseDensity& a, const SparseDensity& b) {
  SparseDensity out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

ClusterResult cluster_vertices(const DecompGraph& g) {
  std::size_t n = g.verts.size();
  std::vector<std::uint32_t> map(n);
  std::iota(map.begin(), map.end(), 0);

  DecompGraph cur = g;
  for (;;) {
    auto conf = cur.conflict_adj();
    std::size_t mi = SIZE_MAX, mj = SIZE_MAX;
    for (std::size_t i = 0; i < cur.verts.size() && mi == SIZE_MAX; ++i)
      for (std::size_t j = i + 1; j < cur.verts.size(); ++j) {
        if (std::binary_search(conf[i].begin(), conf[i].end(), std::uint32_t(j)))
          continue;
        if (conf[i] == conf[j]) {
          mi = i;
          mj = j;
          break;
        }
      }
    if (mi == SIZE_MAX) break;

    DecompGraph next;
    next.bin_count = cur.bin_count;
    std::vector<std::uint32_t> remap(cur.verts.size());
    for (std::size_t v = 0, w = 0; v < cur.verts.size(); ++v) {
      if (v == mj) {
        remap[v] = std::uint32_t(mi);  // mi < mj, so mi keeps its index
        continue;
      }
      remap[v] = std::uint32_t(w++);
    }
    for (std::size_t v = 0; v < cur.verts.size(); ++v) {
      if (v == mj) continue;
      DGVertex nv = cur.verts[v];
      if (v == mi) {
        const DGVertex& mv = cur.verts[mj];
        nv.members.insert(nv.members.end(), mv.members.begin(), mv.members.end());
        nv.rects.insert(nv.rects.end(), mv.rects.begin(), mv.rects.end());
        nv.density = merge_density(nv.density, mv.density);
        std::sort(nv.members.begin(), nv.members.end());
      }
      next.verts.push_back(std::move(nv));
    }
    auto remap_edges = [&](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& es) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
      for (auto [u, v] : es) {
        std::uint32_t a = remap[u], b = remap[v];
        if (a == b) continue;
        out.emplace_back(std::min(a, b), std::max(a, b));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    next.conflict_edges = remap_edges(cur.conflict_edges);
    next.stitch_edges = remap_edges(cur.stitch_edges);
    for (auto& m : map) m = remap[m];
    cur = std::move(next);
  }
  return {std::move(cur), std::move(map)};
}

std::optional<Coloring> fast_color_trial(const DecompGraph& g) {
  std::size_t n = g.verts.size();
  auto conf = g.conflict_adj();
  auto stit = g.stitch_adj();
  std::vector<std::size_t> cdeg(n), sdeg(n);
  for (std::size_t v = 0; v < n; ++v) {
    cdeg[v] = conf[v].size();
    sdeg[v] = stit[v].size();
  }
  std::vector<char> alive(n, 1);
  std::vector<std::uint32_t> order;

  for (;;) {
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t v = 0; v < n; ++v)
      if (alive[v] && cdeg[v] < 3 && sdeg[v] < 2) {
        pick = v;
        break;
      }
    if (pick == UINT32_MAX) break;
    alive[pick] = 0;
    order.push_back(pick);
    for (std::uint32_t w : conf[pick])
      if (alive[w]) --cdeg[w];
    for (std::uint32_t w : stit[pick])
      if (alive[w]) --sdeg[w];
  }
  if (order.size() != n) return std::nullopt;  // a dense knot survived the peel

  Coloring col;
  col.colors.assign(n, -1);
  for (std::size_t k = order.size(); k-- > 0;) {
    std::uint32_t v = order[k];
    bool forbidden[3] = {false, false, false};
    for (std::uint32_t w : conf[v])
      if (col.colors[w] >= 0) forbidden[col.colors[w]] = true;
    int stitch_color = -1;
    for (std::uint32_t w : stit[v])
      if (col.colors[w] >= 0) stitch_color = col.colors[w];
    if (stitch_color >= 0) {
      if (forbidden[stitch_color]) return std::nullopt;  // stitch unavoidable
      col.colors[v] = stitch_color;
      continue;
    }
    for (int c = 0; c < 3; ++c)
      if (!forbidden[c]) {
        col.colors[v] = c;
        break;
      }
    if (col.colors[v] < 0) throw InternalError("pop saw three conflict colors");
  }
  return col;
}

}  // namespace tpd
