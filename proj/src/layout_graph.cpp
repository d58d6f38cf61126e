#include "tpd/layout_graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "tpd/errors.hpp"

namespace tpd {

std::size_t LayoutGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj) twice += a.size();
  return twice / 2;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> LayoutGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
  for (std::uint32_t u = 0; u < adj.size(); ++u)
    for (std::uint32_t v : adj[u])
      if (u < v) es.emplace_back(u, v);
  return es;
}

namespace {

std::uint64_t cell_key(Coord cx, Coord cy) {
  return (std::uint64_t(std::uint32_t(cx)) << 32) | std::uint64_t(std::uint32_t(cy));
}

Coord min_dist2(const std::vector<Rect>& a, const std::vector<Rect>& b) {
  Coord best = -1;
  for (const Rect& ra : a)
    for (const Rect& rb : b) {
      Coord d = rect_dist2(ra, rb);
      if (best < 0 || d < best) best = d;
      if (best == 0) return 0;
    }
  return best;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> find_close_pairs(
    const std::vector<std::vector<Rect>>& items, Coord dis_m, Exec exec) {
  const std::int64_t n = std::int64_t(items.size());
  const Coord limit2 = dis_m * dis_m;

  // Cell size dis_m: any pair closer than dis_m shares a cell or sits in
  // adjacent cells of at least one of its rects.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  auto cell_of = [&](Coord v) {
    return v >= 0 ? v / dis_m : -((-v + dis_m - 1) / dis_m);
  };
  for (std::uint32_t i = 0; i < items.size(); ++i) {
    for (const Rect& r : items[i])
      for (Coord cy = cell_of(r.y0); cy <= cell_of(r.y1 - 1); ++cy)
        for (Coord cx = cell_of(r.x0); cx <= cell_of(r.x1 - 1); ++cx) {
          auto& v = cells[cell_key(cx, cy)];
          if (v.empty() || v.back() != i) v.push_back(i);
        }
  }

  std::vector<std::vector<std::uint32_t>> nbrs(items.size());
  auto collect = [&](std::int64_t i) {
    std::vector<std::uint32_t>& out = nbrs[std::size_t(i)];
    for (const Rect& r : items[std::size_t(i)]) {
      // One extra ring of cells catches everything within dis_m.
      for (Coord cy = cell_of(r.y0) - 1; cy <= cell_of(r.y1 - 1) + 1; ++cy)
        for (Coord cx = cell_of(r.x0) - 1; cx <= cell_of(r.x1 - 1) + 1; ++cx) {
          auto it = cells.find(cell_key(cx, cy));
          if (it == cells.end()) continue;
          for (std::uint32_t j : it->second)
            if (j > std::uint32_t(i)) out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](std::uint32_t j) {
                               return min_dist2(items[std::size_t(i)], items[j]) >= limit2;
                             }),
              out.end());
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) collect(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) collect(i);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < items.size(); ++i)
    for (std::uint32_t j : nbrs[i]) pairs.emplace_back(i, j);
  return pairs;
}

LayoutGraph build_layout_graph(const LayoutSpec& spec, Coord dis_m, Exec exec) {
  if (dis_m <= 0) throw ValidationError("dis_m must be positive");
  std::vector<std::vector<Rect>> items;
  items.reserve(spec.features.size());
  for (const Feature& f : spec.features) items.push_back(f.rects);

  LayoutGraph g;
  g.vertex_ids.resize(items.size());
  for (std::uint32_t i = 0; i < items.size(); ++i) g.vertex_ids[i] = i;
  g.adj.resize(items.size());
  for (auto [i, j] : find_close_pairs(items, dis_m, exec)) {
    g.adj[i].push_back(j);
    g.adj[j].push_back(i);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

namespace {

// Induced subgraph on the given (sorted) local vertex set.
LayoutGraph induce(const LayoutGraph& g, const std::vector<std::uint32_t>& verts) {
  LayoutGraph s;
  s.vertex_ids.reserve(verts.size());
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  local.reserve(verts.size());
  for (std::uint32_t v : verts) {
    local[v] = std::uint32_t(s.vertex_ids.size());
    s.vertex_ids.push_back(g.vertex_ids[v]);
  }
  s.adj.resize(verts.size());
  for (std::uint32_t v : verts)
    for (std::uint32_t w : g.adj[v]) {
      auto it = local.find(w);
      if (it != local.end()) s.adj[local[v]].push_back(it->second);
    }
  for (auto& a : s.adj) std::sort(a.begin(), a.end());
  return s;
}

}  // namespace

std::vector<LayoutGraph> split_independent_components(const LayoutGraph& g) {
  std::vector<LayoutGraph> comps;
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> stack{s}, members;
    seen[s] = 1;
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::uint32_t w : g.adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(induce(g, members));
  }
  return comps;
}

SimplifyResult simplify_low_degree(const LayoutGraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> adj = g.adj;
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = adj[v].size();

  SimplifyResult res;
  for (;;) {
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t v = 0; v < n; ++v)
      if (alive[v] && deg[v] <= 2) {
        pick = v;
        break;
      }
    if (pick == UINT32_MAX) break;
    RemovalRecord rec;
    rec.feature = g.vertex_ids[pick];
    for (std::uint32_t w : adj[pick])
      if (alive[w]) rec.neighbors.push_back(g.vertex_ids[w]);
    res.stack.push_back(std::move(rec));
    alive[pick] = 0;
    for (std::uint32_t w : adj[pick])
      if (alive[w]) --deg[w];
  }

  std::vector<std::uint32_t> keep;
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) keep.push_back(v);
  res.core = induce(g, keep);
  return res;
}

namespace {

// Iterative articulation-point / biconnected-component DFS.
struct BlockDfs {
  const LayoutGraph& g;
  std::vector<int> disc, low;
  std::vector<std::uint32_t> parent;
  std::vector<char> is_cut;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_stack;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> blocks;
  int timer = 0;

  explicit BlockDfs(const LayoutGraph& graph)
      : g(graph),
        disc(graph.vertex_count(), -1),
        low(graph.vertex_count(), 0),
        parent(graph.vertex_count(), UINT32_MAX),
        is_cut(graph.vertex_count(), 0) {}

  void pop_block(std::uint32_t u, std::uint32_t v) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> blk;
    for (;;) {
      auto e = edge_stack.back();
      edge_stack.pop_back();
      blk.push_back(e);
      if (e == std::make_pair(u, v)) break;
    }
    blocks.push_back(std::move(blk));
  }

  void run(std::uint32_t root) {
    struct Frame {
      std::uint32_t v;
      std::size_t next = 0;
    };
    std::vector<Frame> st{{root}};
    disc[root] = low[root] = timer++;
    int root_children = 0;
    while (!st.empty()) {
      Frame& f = st.back();
      std::uint32_t v = f.v;
      if (f.next < g.adj[v].size()) {
        std::uint32_t w = g.adj[v][f.next++];
        if (disc[w] < 0) {
          edge_stack.emplace_back(v, w);
          parent[w] = v;
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          st.push_back({w});
        } else if (w != parent[v] && disc[w] < disc[v]) {
          edge_stack.emplace_back(v, w);
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        st.pop_back();
        if (!st.empty()) {
          std::uint32_t p = st.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= disc[p]) {
            if (p != root) is_cut[p] = 1;
            pop_block(p, v);
          }
        }
      }
    }
    if (root_children >= 2) is_cut[root] = 1;
  }
};

}  // namespace

std::vector<std::uint32_t> find_cut_vertices(const LayoutGraph& g) {
  BlockDfs dfs(g);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (dfs.disc[v] < 0 && !g.adj[v].empty()) dfs.run(v);
  std::vector<std::uint32_t> cuts;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (dfs.is_cut[v]) cuts.push_back(g.vertex_ids[v]);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

BiconnectedSplit split_biconnected(const LayoutGraph& g) {
  BlockDfs dfs(g);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (dfs.disc[v] < 0 && !g.adj[v].empty()) dfs.run(v);

  BiconnectedSplit out;
  // Map local vertex -> parts containing it, to recover shared cut vertices.
  std::vector<std::vector<std::uint32_t>> in_parts(g.vertex_count());

  for (auto& blk : dfs.blocks) {
    std::vector<std::uint32_t> verts;
    for (auto [u, v] : blk) {
      verts.push_back(u);
      verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    LayoutGraph part;
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    for (std::uint32_t v : verts) {
      local[v] = std::uint32_t(part.vertex_ids.size());
      part.vertex_ids.push_back(g.vertex_ids[v]);
    }
    part.adj.resize(verts.size());
    for (auto [u, v] : blk) {
      part.adj[local[u]].push_back(local[v]);
      part.adj[local[v]].push_back(local[u]);
    }
    for (auto& a : part.adj) std::sort(a.begin(), a.end());
    std::uint32_t idx = std::uint32_t(out.parts.size());
    for (std::uint32_t v : verts) in_parts[v].push_back(idx);
    out.parts.push_back(std::move(part));
  }

  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (g.adj[v].empty()) {
      LayoutGraph part;
      part.vertex_ids.push_back(g.vertex_ids[v]);
      part.adj.resize(1);
      out.parts.push_back(std::move(part));
    }

  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (in_parts[v].size() >= 2)
      for (std::size_t k = 1; k < in_parts[v].size(); ++k)
        out.tree.push_back({in_parts[v][0], in_parts[v][k], g.vertex_ids[v]});
  return out;
}

}  // namespace tpd
