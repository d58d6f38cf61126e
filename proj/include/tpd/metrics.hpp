#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tpd/decomp_graph.hpp"

namespace tpd {

// Guard for max/min density ratios; bins with zero total density are skipped.
inline constexpr double kDuEpsilon = 1e-6;

struct DecompositionReport {
  std::uint64_t conflicts = 0;
  std::uint64_t stitches = 0;
  double cost = 0.0;  // conflicts + 0.1 * stitches
  std::vector<std::pair<std::uint32_t, double>> du_per_bin;  // nonempty bins only
  double du_sum = 0.0;
  double objective = 0.0;  // conflicts + alpha*stitches + beta*du_sum
};

// DU over one bin's three per-color densities; 0 for an empty bin.
double bin_du(const std::array<double, 3>& d);

// Sum of DU_k over all bins, empty bins skipped.
double du_sum_from_bins(const std::vector<std::array<double, 3>>& bins);

// Per-color density accumulation d_kc over bins from vertex densities.
std::vector<std::array<double, 3>> accumulate_color_densities(
    const DecompGraph& g, const Coloring& c);

DecompositionReport evaluate_coloring(const DecompGraph& g, const Coloring& c,
                                      double alpha = 0.1, double beta = 0.0);

struct OracleResult {
  Coloring coloring;
  double objective = 0.0;
};

// Exact minimizer of conflicts + alpha*stitches + beta*du_sum by enumeration,
// color of vertex 0 fixed to 0.  Ties broken by lexicographically smallest
// color vector.  Throws ValidationError above max_vertices.
OracleResult brute_force_optimal(const DecompGraph& g, double alpha, double beta,
                                 std::size_t max_vertices = 15);

}  // namespace tpd
