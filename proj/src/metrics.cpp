#include "tpd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tpd/errors.hpp"

namespace tpd {

double bin_du(const std::array<double, 3>& d) {
  double mx = std::max({d[0], d[1], d[2]});
  if (mx <= 0.0) return 0.0;
  double mn = std::min({d[0], d[1], d[2]});
  return (mx + kDuEpsilon) / (mn + kDuEpsilon);
}

double du_sum_from_bins(const std::vector<std::array<double, 3>>& bins) {
  double s = 0.0;
  for (const auto& b : bins) s += bin_du(b);
  return s;
}

std::vector<std::array<double, 3>> accumulate_color_densities(const DecompGraph& g,
                                                              const Coloring& c) {
  std::vector<std::array<double, 3>> bins(g.bin_count, {0.0, 0.0, 0.0});
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    int col = c.colors[v];
    for (const auto& [bin, d] : g.verts[v].density) bins[bin][std::size_t(col)] += d;
  }
  return bins;
}

DecompositionReport evaluate_coloring(const DecompGraph& g, const Coloring& c,
                                      double alpha, double beta) {
  if (c.colors.size() != g.verts.size())
    throw ValidationError("coloring size does not match graph");
  for (int col : c.colors)
    if (col < 0 || col > 2) throw ValidationError("coloring is partial or out of range");

  DecompositionReport r;
  for (const auto& [u, v] : g.conflict_edges)
    if (c.colors[u] == c.colors[v]) ++r.conflicts;
  for (const auto& [u, v] : g.stitch_edges)
    if (c.colors[u] != c.colors[v]) ++r.stitches;
  r.cost = double(r.conflicts) + 0.1 * double(r.stitches);

  auto bins = accumulate_color_densities(g, c);
  for (std::uint32_t k = 0; k < bins.size(); ++k) {
    double du = bin_du(bins[k]);
    if (du > 0.0) {
      r.du_per_bin.push_back({k, du});
      r.du_sum += du;
    }
  }
  r.objective = double(r.conflicts) + alpha * double(r.stitches) + beta * r.du_sum;
  return r;
}

OracleResult brute_force_optimal(const DecompGraph& g, double alpha, double beta,
                                 std::size_t max_vertices) {
  const std::size_t n = g.verts.size();
  if (n > max_vertices) throw ValidationError("oracle instance too large");

  OracleResult best;
  best.coloring.colors.assign(n, 0);
  if (n == 0) return best;

  std::vector<int> cur(n, 0);
  bool have = false;
  // 3^(n-1) assignments, vertex 0 pinned to color 0.
  for (;;) {
    std::vector<std::array<double, 3>> bins(g.bin_count, {0.0, 0.0, 0.0});
    double obj = 0.0;
    for (const auto& [u, v] : g.conflict_edges)
      if (cur[u] == cur[v]) obj += 1.0;
    for (const auto& [u, v] : g.stitch_edges)
      if (cur[u] != cur[v]) obj += alpha;
    if (beta != 0.0) {
      for (std::size_t v = 0; v < n; ++v)
        for (const auto& [bin, d] : g.verts[v].density)
          bins[bin][std::size_t(cur[v])] += d;
      obj += beta * du_sum_from_bins(bins);
    }
    if (!have || obj < best.objective - 1e-12) {
      have = true;
      best.objective = obj;
      best.coloring.colors = cur;
    }
    // lexicographic increment keeps the first-found minimum lexicographically smallest
    std::size_t i = n;
    while (i > 1) {
      if (cur[i - 1] < 2) {
        ++cur[i - 1];
        break;
      }
      cur[i - 1] = 0;
      --i;
    }
    if (i == 1) break;
  }
  return best;
}

}  // namespace tpd
