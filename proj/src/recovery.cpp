#include "tpd/recovery.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "tpd/errors.hpp"
#include "tpd/metrics.hpp"

namespace tpd {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

void merge_component_colorings(const DecompGraph& g,
                               const std::vector<PartColoring>& parts,
                               const std::vector<PartJoin>& joins,
                               std::vector<int>& colors) {
  std::map<FragKey, std::uint32_t> vertex_of;
  for (std::uint32_t v = 0; v < g.verts.size(); ++v) {
    if (g.verts[v].members.size() != 1)
      throw InternalError("merge expects an unclustered graph");
    vertex_of[g.verts[v].members[0]] = v;
  }

  // Per part: density per original color, plus the touched bin set.
  struct PartDens {
    std::array<SparseDensity, 3> by_color;
    std::vector<std::uint32_t> touched;
  };
  std::vector<PartDens> dens(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    std::array<std::vector<std::pair<std::uint32_t, double>>, 3> acc;
    for (const auto& [key, col] : parts[p].frag_colors) {
      auto it = vertex_of.find(key);
      if (it == vertex_of.end()) throw InternalError("part fragment missing from graph");
      for (const auto& [bin, d] : g.verts[it->second].density)
        acc[std::size_t(col)].push_back({bin, d});
    }
    for (int c = 0; c < 3; ++c) {
      std::sort(acc[c].begin(), acc[c].end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [bin, d] : acc[c]) {
        auto& out = dens[p].by_color[std::size_t(c)];
        if (!out.empty() && out.back().first == bin)
          out.back().second += d;
        else
          out.push_back({bin, d});
        dens[p].touched.push_back(bin);
      }
    }
    std::sort(dens[p].touched.begin(), dens[p].touched.end());
    dens[p].touched.erase(std::unique(dens[p].touched.begin(), dens[p].touched.end()),
                          dens[p].touched.end());
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> part_adj(parts.size());
  for (std::uint32_t j = 0; j < joins.size(); ++j) {
    part_adj[joins[j].part_a].push_back({joins[j].part_b, j});
    part_adj[joins[j].part_b].push_back({joins[j].part_a, j});
  }

  std::vector<std::array<double, 3>> bins(g.bin_count, {0.0, 0.0, 0.0});
  std::vector<bool> visited(parts.size(), false);

  auto apply_part = [&](std::size_t p, const std::array<int, 3>& perm) {
    for (const auto& [key, col] : parts[p].frag_colors)
      colors[vertex_of.at(key)] = perm[std::size_t(col)];
    for (int c = 0; c < 3; ++c)
      for (const auto& [bin, d] : dens[p].by_color[std::size_t(c)])
        bins[bin][std::size_t(perm[std::size_t(c)])] += d;
  };

  // Permutation minimizing du over the part's touched bins; candidates is a
  // mask over kPerms.
  auto pick_perm = [&](std::size_t p, unsigned mask) {
    std::size_t best = 0;
    double best_du = 0.0;
    bool have = false;
    for (std::size_t k = 0; k < kPerms.size(); ++k) {
      if (!(mask & (1u << k))) continue;
      std::vector<std::array<double, 3>> trial;
      trial.reserve(dens[p].touched.size());
      for (auto b : dens[p].touched) trial.push_back(bins[b]);
      for (int c = 0; c < 3; ++c)
        for (const auto& [bin, d] : dens[p].by_color[std::size_t(c)]) {
          auto it = std::lower_bound(dens[p].touched.begin(), dens[p].touched.end(), bin);
          trial[std::size_t(it - dens[p].touched.begin())]
               [std::size_t(kPerms[k][std::size_t(c)])] += d;
        }
      double du = 0.0;
      for (const auto& t : trial) du += bin_du(t);
      if (!have || du < best_du - 1e-12) {
        have = true;
        best_du = du;
        best = k;
      }
    }
    if (!have) throw InternalError("no consistent permutation at merge join");
    return kPerms[best];
  };

  // Tree roots: repeatedly the unvisited part with the most features.
  std::vector<std::size_t> root_order(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) root_order[i] = i;
  std::stable_sort(root_order.begin(), root_order.end(), [&](std::size_t a, std::size_t b) {
    return parts[a].feature_count > parts[b].feature_count;
  });

  for (auto root : root_order) {
    if (visited[root]) continue;
    visited[root] = true;
    apply_part(root, pick_perm(root, 0x3f));

    std::vector<std::size_t> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t p = queue[qi];
      for (auto [other, j] : part_adj[p]) {
        if (visited[other]) continue;
        visited[other] = true;
        FragKey shared{joins[j].shared_feature, 0};
        int fixed = colors[vertex_of.at(shared)];
        int raw = -1;
        for (const auto& [key, col] : parts[other].frag_colors)
          if (key == shared) {
            raw = col;
            break;
          }
        if (fixed < 0 || raw < 0) throw InternalError("join vertex uncolored at merge");
        unsigned mask = 0;
        for (std::size_t k = 0; k < kPerms.size(); ++k)
          if (kPerms[k][std::size_t(raw)] == fixed) mask |= 1u << k;
        apply_part(other, pick_perm(other, mask));
        queue.push_back(other);
      }
    }
  }
}

std::uint32_t recover_removed_vertices(const DecompGraph& g,
                                       const std::vector<std::vector<RemovalRecord>>& stacks,
                                       Coord dis_m, std::vector<int>& colors) {
  // Vertices of each feature, and the single vertex of single-fragment ones.
  std::map<std::uint32_t, std::vector<std::uint32_t>> verts_of_feature;
  for (std::uint32_t v = 0; v < g.verts.size(); ++v)
    verts_of_feature[g.verts[v].members[0].feature].push_back(v);

  auto conf_adj = g.conflict_adj();

  std::vector<std::array<double, 3>> bins(g.bin_count, {0.0, 0.0, 0.0});
  for (std::uint32_t v = 0; v < g.verts.size(); ++v)
    if (colors[v] >= 0)
      for (const auto& [bin, d] : g.verts[v].density)
        bins[bin][std::size_t(colors[v])] += d;

  const Coord d2 = dis_m * dis_m;
  std::uint32_t forced = 0;

  for (const auto& stack : stacks) {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (it->neighbors.size() > 2)
        throw InternalError("removal record with more than two neighbors");
      auto fit = verts_of_feature.find(it->feature);
      if (fit == verts_of_feature.end() || fit->second.size() != 1)
        throw InternalError("removed feature is not a single fragment");
      std::uint32_t v = fit->second[0];
      if (colors[v] >= 0) throw InternalError("removed feature already colored");

      bool forbidden[3] = {false, false, false};
      for (auto nb : it->neighbors) {
        auto nit = verts_of_feature.find(nb);
        if (nit == verts_of_feature.end()) continue;
        for (auto nv : nit->second) {
          if (colors[nv] < 0) continue;
          bool close = false;
          for (const auto& ra : g.verts[v].rects) {
            for (const auto& rb : g.verts[nv].rects)
              if (rect_dist2(ra, rb) < d2) {
                close = true;
                break;
              }
            if (close) break;
          }
          if (close) forbidden[std::size_t(colors[nv])] = true;
        }
      }

      int pick = -1;
      double pick_du = 0.0;
      bool any_legal = !forbidden[0] || !forbidden[1] || !forbidden[2];
      if (any_legal) {
        for (int c = 0; c < 3; ++c) {
          if (forbidden[c]) continue;
          double du = 0.0;
          for (const auto& [bin, d] : g.verts[v].density) {
            auto b = bins[bin];
            b[std::size_t(c)] += d;
            du += bin_du(b) - bin_du(bins[bin]);
          }
          if (pick < 0 || du < pick_du - 1e-12) {
            pick = c;
            pick_du = du;
          }
        }
      } else {
        // All three colors blocked at fragment granularity: take the one
        // introducing the fewest conflicts.
        std::uint32_t pick_cost = 0;
        for (int c = 0; c < 3; ++c) {
          std::uint32_t cost = 0;
          for (auto nv : conf_adj[v])
            if (colors[nv] == c) ++cost;
          if (pick < 0 || cost < pick_cost) {
            pick = c;
            pick_cost = cost;
          }
        }
        forced += pick_cost;
      }

      colors[v] = pick;
      for (const auto& [bin, d] : g.verts[v].density)
        bins[bin][std::size_t(pick)] += d;
    }
  }
  return forced;
}

}  // namespace tpd
