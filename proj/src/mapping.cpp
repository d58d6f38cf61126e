#include "tpd/mapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "tpd/errors.hpp"
#include "tpd/metrics.hpp"

namespace tpd {

MergeState::MergeState(std::size_t n) : parent_(n), rank_(n, 0) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = std::uint32_t(i);
}

std::uint32_t MergeState::find(std::uint32_t v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool MergeState::same(std::uint32_t u, std::uint32_t v) { return find(u) == find(v); }

bool MergeState::incompatible(std::uint32_t u, std::uint32_t v) {
  std::uint32_t a = find(u), b = find(v);
  if (a > b) std::swap(a, b);
  return incompat_.count({a, b}) != 0;
}

void MergeState::renormalize() {
  std::set<std::pair<std::uint32_t, std::uint32_t>> fresh;
  for (auto [a, b] : incompat_) {
    a = find(a);
    b = find(b);
    if (a == b) continue;  // cannot happen: unions refuse incompatible pairs
    if (a > b) std::swap(a, b);
    fresh.insert({a, b});
  }
  incompat_ = std::move(fresh);
}

bool MergeState::union_sets(std::uint32_t u, std::uint32_t v) {
  std::uint32_t a = find(u), b = find(v);
  if (a == b) return true;
  std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
  if (incompat_.count({lo, hi})) {
    ++skipped_unions;
    return false;
  }
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  ++unions;
  renormalize();
  return true;
}

bool MergeState::separate(std::uint32_t u, std::uint32_t v) {
  std::uint32_t a = find(u), b = find(v);
  if (a == b) {
    ++unavoidable_separations;
    return false;
  }
  if (a > b) std::swap(a, b);
  if (incompat_.insert({a, b}).second) ++separations;
  return true;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> MergeState::incompatible_pairs() const {
  return {incompat_.begin(), incompat_.end()};
}

MergeState threshold_merge(const Mat& x, const DecompGraph& g, double th_unn,
                           double th_sp) {
  const std::size_t n = g.verts.size();
  if (x.n != n) throw ValidationError("sdp solution dimension mismatch");
  MergeState ms(n);

  struct Trip {
    double v;
    std::uint32_t i, j;
  };
  std::vector<Trip> trips;
  trips.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) trips.push_back({x.at(i, j), i, j});
  std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
    if (a.v != b.v) return a.v > b.v;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  for (const auto& t : trips) {
    if (t.v > th_unn)
      ms.union_sets(t.i, t.j);
    else if (t.v < th_sp)
      ms.separate(t.i, t.j);
  }
  return ms;
}

namespace {

SparseDensity sum_densities(const DecompGraph& g, const std::vector<std::uint32_t>& members) {
  std::vector<std::pair<std::uint32_t, double>> all;
  for (auto v : members)
    all.insert(all.end(), g.verts[v].density.begin(), g.verts[v].density.end());
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseDensity out;
  for (const auto& [bin, d] : all) {
    if (!out.empty() && out.back().first == bin)
      out.back().second += d;
    else
      out.push_back({bin, d});
  }
  return out;
}

}  // namespace

MappingGraph build_mapping_graph(MergeState& ms, const DecompGraph& g, const Mat& x,
                                 double alpha, double kappa, double th_unn,
                                 double th_sp) {
  const std::size_t n = g.verts.size();
  MappingGraph gm;
  gm.bin_count = g.bin_count;
  gm.vertex_to_node.assign(n, 0);

  std::map<std::uint32_t, std::uint32_t> rep_to_node;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = ms.find(v);
    auto it = rep_to_node.find(r);
    if (it == rep_to_node.end()) {
      it = rep_to_node.insert({r, std::uint32_t(gm.nodes.size())}).first;
      gm.nodes.push_back({});
    }
    gm.vertex_to_node[v] = it->second;
    gm.nodes[it->second].members.push_back(v);
  }
  for (auto& node : gm.nodes) {
    node.density = sum_densities(g, node.members);
    for (const auto& [bin, d] : node.density) node.weight += d;
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> ew;
  auto touch = [&](std::uint32_t u, std::uint32_t v, double w) {
    std::uint32_t a = gm.vertex_to_node[u], b = gm.vertex_to_node[v];
    if (a == b) return;
    if (a > b) std::swap(a, b);
    ew[{a, b}] += w;
  };
  for (const auto& [u, v] : g.conflict_edges) touch(u, v, 1.0);
  for (const auto& [u, v] : g.stitch_edges) touch(u, v, -alpha);
  if (kappa != 0.0) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        double xv = x.at(i, j);
        if (xv > th_unn || xv < th_sp) continue;  // acted on by thresholds
        touch(i, j, kappa * (0.5 - xv));
      }
  }
  for (const auto& [key, w] : ew) gm.edges.push_back({key.first, key.second, w});

  std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
  for (auto [ra, rb] : ms.incompatible_pairs()) {
    std::uint32_t a = gm.vertex_to_node[ra], b = gm.vertex_to_node[rb];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    inc.push_back({a, b});
  }
  std::sort(inc.begin(), inc.end());
  inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
  gm.incompatible = std::move(inc);
  return gm;
}

double cut_weight(const MappingGraph& gm, const std::vector<int>& part) {
  double c = 0.0;
  for (const auto& e : gm.edges)
    if (part[e.a] != part[e.b]) c += e.w;
  return c;
}

double partition_du_sum(const MappingGraph& gm, const std::vector<int>& part) {
  std::vector<std::array<double, 3>> bins(gm.bin_count, {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < gm.nodes.size(); ++i)
    for (const auto& [bin, d] : gm.nodes[i].density)
      bins[bin][std::size_t(part[i])] += d;
  return du_sum_from_bins(bins);
}

namespace {

std::uint32_t count_violations(const MappingGraph& gm, const std::vector<int>& part) {
  std::uint32_t v = 0;
  for (const auto& [a, b] : gm.incompatible)
    if (part[a] == part[b]) ++v;
  return v;
}

}  // namespace

Partition backtrack_threeway(const MappingGraph& gm) {
  const std::size_t m = gm.nodes.size();
  Partition best;
  if (m == 0) return best;

  std::vector<int> cur(m, 0);
  bool have = false;
  double best_du = 0.0;
  for (;;) {
    std::uint32_t viol = count_violations(gm, cur);
    double cut = cut_weight(gm, cur);
    bool better = false;
    if (!have)
      better = true;
    else if (viol != best.violations)
      better = viol < best.violations;
    else if (cut > best.cut + 1e-9)
      better = true;
    else if (cut >= best.cut - 1e-9)
      // cut tie: earlier (lexicographically smaller) wins unless du improves
      better = partition_du_sum(gm, cur) < best_du - 1e-9;
    if (better) {
      have = true;
      best.part = cur;
      best.cut = cut;
      best.violations = viol;
      best_du = partition_du_sum(gm, cur);
    }
    std::size_t i = m;
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
  best.feasible = best.violations == 0;
  return best;
}

namespace {

struct FmState {
  const MappingGraph& gm;
  std::vector<int> part;
  std::vector<std::array<double, 3>> bins;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // node -> (other, w)
  std::vector<std::vector<std::uint32_t>> inc_adj;

  explicit FmState(const MappingGraph& g)
      : gm(g),
        part(g.nodes.size(), -1),
        bins(g.bin_count, {0.0, 0.0, 0.0}),
        adj(g.nodes.size()),
        inc_adj(g.nodes.size()) {
    for (const auto& e : g.edges) {
      adj[e.a].push_back({e.b, e.w});
      adj[e.b].push_back({e.a, e.w});
    }
    for (const auto& [a, b] : g.incompatible) {
      inc_adj[a].push_back(b);
      inc_adj[b].push_back(a);
    }
  }

  // du change over the node's bins if its density moves from color `from`
  // (-1 when unplaced) to color `to`.
  double du_delta(std::uint32_t node, int from, int to) const {
    double delta = 0.0;
    for (const auto& [bin, d] : gm.nodes[node].density) {
      std::array<double, 3> b = bins[bin];
      double before = bin_du(b);
      if (from >= 0) b[std::size_t(from)] -= d;
      b[std::size_t(to)] += d;
      delta += bin_du(b) - before;
    }
    return delta;
  }

  void apply(std::uint32_t node, int from, int to) {
    for (const auto& [bin, d] : gm.nodes[node].density) {
      if (from >= 0) bins[bin][std::size_t(from)] -= d;
      bins[bin][std::size_t(to)] += d;
    }
    part[node] = to;
  }

  double cut_gain(std::uint32_t node, int from, int to) const {
    double g = 0.0;
    for (const auto& [other, w] : adj[node]) {
      if (part[other] < 0) continue;
      bool cut_before = from >= 0 && part[other] != from;
      bool cut_after = part[other] != to;
      if (cut_after != cut_before) g += cut_after ? w : -w;
    }
    return g;
  }
};

}  // namespace

Partition fm_threeway(const MappingGraph& gm, int passes, double beta_m,
                      std::uint64_t /*seed*/) {
  const std::size_t m = gm.nodes.size();
  Partition res;
  if (m == 0) return res;

  FmState st(gm);

  // Greedy initial placement, heaviest density first.
  std::vector<std::uint32_t> order(m);
  for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (gm.nodes[a].weight != gm.nodes[b].weight)
      return gm.nodes[a].weight > gm.nodes[b].weight;
    return a < b;
  });
  for (auto node : order) {
    int best_p = -1;
    double best_gain = 0.0;
    std::uint32_t best_viol = 0;
    for (int p = 0; p < 3; ++p) {
      std::uint32_t viol = 0;
      for (auto other : st.inc_adj[node])
        if (st.part[other] == p) ++viol;
      double gain = st.cut_gain(node, -1, p) - beta_m * st.du_delta(node, -1, p);
      if (best_p < 0 || viol < best_viol ||
          (viol == best_viol && gain > best_gain + 1e-12)) {
        best_p = p;
        best_gain = gain;
        best_viol = viol;
      }
    }
    st.apply(node, -1, best_p);
  }

  struct Move {
    std::uint32_t node;
    int from, to;
    double cum_cut, cum_gain;
  };

  for (int pass = 0; pass < passes; ++pass) {
    std::vector<bool> locked(m, false);
    std::vector<Move> moves;
    double cum_cut = 0.0, cum_gain = 0.0;

    for (;;) {
      bool found = false;
      std::uint32_t bn = 0;
      int bt = 0;
      double bg = 0.0, bcg = 0.0;
      for (std::uint32_t node = 0; node < m; ++node) {
        if (locked[node]) continue;
        int cur = st.part[node];
        for (int q = 0; q < 3; ++q) {
          if (q == cur) continue;
          bool ok = true;
          for (auto other : st.inc_adj[node])
            if (st.part[other] == q) {
              ok = false;
              break;
            }
          if (!ok) continue;
          double cg = st.cut_gain(node, cur, q);
          double g = cg - beta_m * st.du_delta(node, cur, q);
          if (!found || g > bg + 1e-12) {
            found = true;
            bn = node;
            bt = q;
            bg = g;
            bcg = cg;
          }
        }
      }
      if (!found) break;
      int from = st.part[bn];
      st.apply(bn, from, bt);
      locked[bn] = true;
      cum_cut += bcg;
      cum_gain += bg;
      moves.push_back({bn, from, bt, cum_cut, cum_gain});
    }

    // Best prefix with nonnegative cut delta; empty prefix is the baseline.
    std::size_t keep = 0;
    double keep_gain = 0.0;
    for (std::size_t t = 0; t < moves.size(); ++t) {
      if (moves[t].cum_cut < -1e-12) continue;
      if (moves[t].cum_gain > keep_gain + 1e-12) {
        keep = t + 1;
        keep_gain = moves[t].cum_gain;
      }
    }
    for (std::size_t t = moves.size(); t > keep; --t)
      st.apply(moves[t - 1].node, moves[t - 1].to, moves[t - 1].from);
    if (keep == 0) break;
  }

  res.part = st.part;
  res.cut = cut_weight(gm, res.part);
  res.violations = count_violations(gm, res.part);
  res.feasible = res.violations == 0;
  return res;
}

Coloring partition_to_coloring(const MappingGraph& gm, const std::vector<int>& part,
                               std::size_t vertex_count) {
  Coloring c;
  c.colors.assign(vertex_count, 0);
  for (std::size_t v = 0; v < vertex_count; ++v)
    c.colors[v] = part[gm.vertex_to_node[v]];
  return c;
}

}  // namespace tpd
