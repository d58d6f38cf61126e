#pragma once

#include <cstdint>
#include <string>

#include "tpd/decomp_graph.hpp"
#include "tpd/geometry.hpp"
#include "tpd/metrics.hpp"

namespace tpd {

struct PipelineOptions {
  double alpha = 0.1;
  double beta = 0.04;
  double bin_factor = 10.0;
  double bin_overlap = 0.5;
  double th_union = 0.9;
  double th_separate = -0.4;
  double kappa = 1.0;
  int backtrack_limit = 7;
  int max_stitch = 4;
  double sdp_tol = 1e-6;
  int sdp_max_iter = 5000;
  std::uint64_t seed = 0;
  int fm_passes = 10;
  int jobs = 1;  // component-level parallelism
  // Simplification switches; all on by default.
  bool peel = true;         // low-degree vertex removal
  bool biconnected = true;  // cut-vertex split (implies stitch forbiddance there)
  bool cluster = true;      // same-conflict-set vertex clustering
  bool trial = true;        // fast color assignment trial before the SDP
};

struct StageTimes {
  double graph_ms = 0;
  double simplify_ms = 0;
  double stitch_ms = 0;
  double sdp_ms = 0;
  double mapping_ms = 0;
  double merge_ms = 0;
  double total_ms = 0;
};

struct PipelineResult {
  Coord dis_m = 0;
  DensityGrid grid;
  DecompGraph graph;  // global fragment-level decomposition graph
  Coloring coloring;  // total over graph.verts
  DecompositionReport report;
  std::uint32_t forced_recovery_conflicts = 0;
  bool fast_trial_used = false;  // some subproblem colored by the trial
  bool sdp_used = false;         // some subproblem went through the SDP
  StageTimes times;
};

PipelineResult run_pipeline(const LayoutSpec& spec, const PipelineOptions& opt = {});

// Artifact serialization.  Byte-stable for fixed inputs: keys are emitted in
// a fixed order and floats in a locale-independent format.
std::string render_coloring_json(const LayoutSpec& spec, const DecompGraph& g,
                                 const Coloring& c);
std::string render_report_json(const LayoutSpec& spec, const PipelineResult& r,
                               const PipelineOptions& opt, bool with_timings,
                               const double* oracle_objective);

}  // namespace tpd
