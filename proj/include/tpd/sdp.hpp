#pragma once

#include <cstdint>
#include <vector>

#include "tpd/decomp_graph.hpp"
#include "tpd/dense.hpp"
#include "tpd/exec.hpp"

namespace tpd {

// Cost matrix for the vector-program relaxation.  Entry (i,j), i != j, is
//   1            per conflict edge
//  -alpha        per stitch edge
//  +beta * sum_k den_ki * den_kj   for every vertex pair sharing a bin,
// and the diagonal carries beta * sum_k den_ki^2.
Mat build_cost_matrix(const DecompGraph& g, double alpha, double beta);

struct SdpOptions {
  double tol = 1e-6;
  int max_iter = 5000;
  std::uint64_t seed = 0;  // reserved for randomized restarts; unused by default
  Exec exec = default_exec();
};

struct SdpResult {
  Mat x;            // solution matrix, unit diagonal up to tol
  double objective; // A . X at the returned point
  int iterations;
  bool converged;
};

// Minimizes A.X over X psd, X_ii = 1, X_ij >= -1/2 on conflict edges.
// Deterministic for fixed inputs regardless of exec mode.
SdpResult solve_sdp(const Mat& a, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& conflict_edges,
                    const SdpOptions& opt = {});

struct SdpFeasibility {
  double max_diag_err;      // max |X_ii - 1|
  double max_conflict_err;  // max over conflict edges of max(0, -1/2 - X_ij)
  double min_eig;           // smallest eigenvalue of X
};

SdpFeasibility check_sdp_feasibility(const Mat& x,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& conflict_edges,
                                     Exec exec = default_exec());

double frob_inner(const Mat& a, const Mat& b);

}  // namespace tpd
