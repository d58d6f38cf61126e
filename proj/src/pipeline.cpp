#include "tpd/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>

#include "json.hpp"
#include "tpd/errors.hpp"
#include "tpd/layout_graph.hpp"
#include "tpd/mapping.hpp"
#include "tpd/recovery.hpp"
#include "tpd/sdp.hpp"
#include "tpd/stitch.hpp"

namespace tpd {

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

struct CompWork {
  std::vector<RemovalRecord> stack;
  std::vector<StitchCandidate> cands;
  std::vector<PartColoring> parts;
  std::vector<PartJoin> joins;  // part indices local to this component
  bool trial_used = false;
  bool sdp_used = false;
  double sdp_ms = 0, mapping_ms = 0, stitch_ms = 0, simplify_ms = 0;
};

PartColoring color_part(const LayoutSpec& spec, const std::vector<std::uint32_t>& feats,
                        const std::vector<StitchCandidate>& cands,
                        const DensityGrid& grid, Coord dis_m,
                        const PipelineOptions& opt, CompWork& w) {
  DecompGraph dg = build_decomposition_graph(spec, feats, cands, &grid, dis_m);
  ClusterResult cr;
  if (opt.cluster) {
    cr = cluster_vertices(dg);
  } else {
    cr.graph = dg;
    cr.orig_to_vertex.resize(dg.verts.size());
    std::iota(cr.orig_to_vertex.begin(), cr.orig_to_vertex.end(), 0u);
  }

  Coloring col;
  bool colored = false;
  if (opt.trial) {
    if (auto t = fast_color_trial(cr.graph)) {
      col = *t;
      colored = true;
      w.trial_used = true;
    }
  }
  if (!colored) {
    w.sdp_used = true;
    double t0 = now_ms();
    Mat a = build_cost_matrix(cr.graph, opt.alpha, opt.beta);
    SdpOptions so;
    so.tol = opt.sdp_tol;
    so.max_iter = opt.sdp_max_iter;
    so.seed = opt.seed;
    SdpResult sr = solve_sdp(a, cr.graph.conflict_edges, so);
    double t1 = now_ms();
    MergeState ms = threshold_merge(sr.x, cr.graph, opt.th_union, opt.th_separate);
    MappingGraph gm = build_mapping_graph(ms, cr.graph, sr.x, opt.alpha, opt.kappa,
                                          opt.th_union, opt.th_separate);
    Partition p = gm.nodes.size() <= std::size_t(opt.backtrack_limit)
                      ? backtrack_threeway(gm)
                      : fm_threeway(gm, opt.fm_passes, opt.beta, opt.seed);
    col = partition_to_coloring(gm, p.part, cr.graph.verts.size());
    double t2 = now_ms();
    w.sdp_ms += t1 - t0;
    w.mapping_ms += t2 - t1;
  }

  PartColoring pc;
  pc.feature_count = feats.size();
  pc.frag_colors.reserve(dg.verts.size());
  for (std::uint32_t v = 0; v < dg.verts.size(); ++v)
    pc.frag_colors.push_back({dg.verts[v].members[0], col.colors[cr.orig_to_vertex[v]]});
  return pc;
}

void process_component(const LayoutSpec& spec, const LayoutGraph& comp,
                       const LayoutGraph& full, const DensityGrid& grid, Coord dis_m,
                       const PipelineOptions& opt, CompWork& w) {
  double t0 = now_ms();
  LayoutGraph core;
  if (opt.peel) {
    SimplifyResult sr = simplify_low_degree(comp);
    core = std::move(sr.core);
    w.stack = std::move(sr.stack);
  } else {
    core = comp;
  }
  if (core.vertex_count() == 0) {
    w.simplify_ms += now_ms() - t0;
    return;
  }

  std::vector<std::uint32_t> cut_feats;
  BiconnectedSplit bs;
  if (opt.biconnected) {
    cut_feats = find_cut_vertices(core);
    bs = split_biconnected(core);
  } else {
    bs.parts.push_back(core);
  }
  double t1 = now_ms();
  w.simplify_ms += t1 - t0;

  // Stitch candidates for core features; neighbors come from the full layout
  // graph so projections see peeled geometry too.  Cut vertices stay whole.
  std::vector<std::uint32_t> full_local(spec.features.size(), 0);
  for (std::uint32_t i = 0; i < full.vertex_ids.size(); ++i)
    full_local[full.vertex_ids[i]] = i;
  for (auto f : core.vertex_ids) {
    if (std::binary_search(cut_feats.begin(), cut_feats.end(), f)) continue;
    std::vector<const Feature*> nbs;
    for (auto nb_local : full.adj[full_local[f]])
      nbs.push_back(&spec.features[full.vertex_ids[nb_local]]);
    auto cands = feature_stitch_candidates(spec.features[f], f, nbs, dis_m,
                                           opt.max_stitch);
    w.cands.insert(w.cands.end(), cands.begin(), cands.end());
  }
  w.stitch_ms += now_ms() - t1;

  for (const auto& part : bs.parts) {
    std::vector<std::uint32_t> feats = part.vertex_ids;
    std::sort(feats.begin(), feats.end());
    w.parts.push_back(color_part(spec, feats, w.cands, grid, dis_m, opt, w));
  }
  for (const auto& j : bs.tree)
    w.joins.push_back({j.part_a, j.part_b, j.shared_feature});
}

}  // namespace

PipelineResult run_pipeline(const LayoutSpec& spec, const PipelineOptions& opt) {
  double t_start = now_ms();
  PipelineResult res;
  res.dis_m = min_coloring_distance(spec);
  res.grid = build_density_grid(spec, opt.bin_factor, opt.bin_overlap);

  double t0 = now_ms();
  LayoutGraph full = build_layout_graph(spec, res.dis_m);
  std::vector<LayoutGraph> comps = split_independent_components(full);
  res.times.graph_ms = now_ms() - t0;

  std::vector<CompWork> work(comps.size());
  std::exception_ptr fail;
  if (opt.jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(opt.jobs)
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      try {
        process_component(spec, comps[ci], full, res.grid, res.dis_m, opt, work[ci]);
      } catch (...) {
#pragma omp critical
        if (!fail) fail = std::current_exception();
      }
    }
  } else {
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      process_component(spec, comps[ci], full, res.grid, res.dis_m, opt, work[ci]);
  }
  if (fail) std::rethrow_exception(fail);

  // Deterministic reduction in component order.
  std::vector<PartColoring> parts;
  std::vector<PartJoin> joins;
  std::vector<std::vector<RemovalRecord>> stacks;
  std::vector<StitchCandidate> cands;
  for (auto& w : work) {
    std::uint32_t base = std::uint32_t(parts.size());
    for (auto& p : w.parts) parts.push_back(std::move(p));
    for (auto j : w.joins) joins.push_back({j.part_a + base, j.part_b + base, j.shared_feature});
    stacks.push_back(std::move(w.stack));
    cands.insert(cands.end(), w.cands.begin(), w.cands.end());
    res.fast_trial_used = res.fast_trial_used || w.trial_used;
    res.sdp_used = res.sdp_used || w.sdp_used;
    res.times.simplify_ms += w.simplify_ms;
    res.times.stitch_ms += w.stitch_ms;
    res.times.sdp_ms += w.sdp_ms;
    res.times.mapping_ms += w.mapping_ms;
  }

  std::vector<std::uint32_t> all_feats(spec.features.size());
  std::iota(all_feats.begin(), all_feats.end(), 0u);
  res.graph = build_decomposition_graph(spec, all_feats, cands, &res.grid, res.dis_m);

  double t2 = now_ms();
  std::vector<int> colors(res.graph.verts.size(), -1);
  merge_component_colorings(res.graph, parts, joins, colors);
  res.forced_recovery_conflicts =
      recover_removed_vertices(res.graph, stacks, res.dis_m, colors);
  for (int c : colors)
    if (c < 0) throw InternalError("pipeline left a fragment uncolored");
  res.coloring.colors = std::move(colors);
  res.times.merge_ms = now_ms() - t2;

  res.report = evaluate_coloring(res.graph, res.coloring, opt.alpha, opt.beta);
  res.times.total_ms = now_ms() - t_start;
  return res;
}

std::string render_coloring_json(const LayoutSpec& spec, const DecompGraph& g,
                                 const Coloring& c) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["fragments"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    if (g.verts[v].members.size() != 1)
      throw InternalError("coloring output expects an unclustered graph");
    const FragKey& k = g.verts[v].members[0];
    nlohmann::ordered_json f;
    f["feature_id"] = spec.features[k.feature].id;
    f["fragment_index"] = k.index;
    f["rects"] = nlohmann::ordered_json::array();
    for (const auto& r : g.verts[v].rects)
      f["rects"].push_back({r.x0, r.y0, r.x1, r.y1});
    f["color"] = c.colors[v];
    j["fragments"].push_back(std::move(f));
  }
  return j.dump(2) + "\n";
}

std::string render_report_json(const LayoutSpec& spec, const PipelineResult& r,
                               const PipelineOptions& opt, bool with_timings,
                               const double* oracle_objective) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["features"] = spec.features.size();
  j["fragments"] = r.graph.verts.size();
  j["dis_m"] = r.dis_m;
  j["bin_side"] = r.grid.bin_side;
  j["bins"] = r.grid.bins.size();
  j["alpha"] = opt.alpha;
  j["beta"] = opt.beta;
  j["conflicts"] = r.report.conflicts;
  j["stitches"] = r.report.stitches;
  j["cost"] = r.report.cost;
  j["du_sum"] = r.report.du_sum;
  j["objective"] = r.report.objective;
  j["fast_trial"] = r.fast_trial_used;
  j["sdp"] = r.sdp_used;
  j["forced_recovery_conflicts"] = r.forced_recovery_conflicts;
  if (oracle_objective) j["oracle_objective"] = *oracle_objective;
  if (with_timings) {
    nlohmann::ordered_json t;
    t["graph_ms"] = r.times.graph_ms;
    t["simplify_ms"] = r.times.simplify_ms;
    t["stitch_ms"] = r.times.stitch_ms;
    t["sdp_ms"] = r.times.sdp_ms;
    t["mapping_ms"] = r.times.mapping_ms;
    t["merge_ms"] = r.times.merge_ms;
    t["total_ms"] = r.times.total_ms;
    j["timings"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

}  // namespace tpd
