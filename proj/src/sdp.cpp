#include "tpd/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "tpd/eigen_sym.hpp"

namespace tpd {

Mat build_cost_matrix(const DecompGraph& g, double alpha, double beta) {
  const std::size_t n = g.verts.size();
  Mat a(n);

  if (beta != 0.0) {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> by_bin(g.bin_count);
    for (std::uint32_t v = 0; v < n; ++v)
      for (const auto& [bin, d] : g.verts[v].density)
        by_bin[bin].push_back({v, d});
    for (const auto& list : by_bin) {
      for (std::size_t p = 0; p < list.size(); ++p) {
        a.at(list[p].first, list[p].first) += beta * list[p].second * list[p].second;
        for (std::size_t q = p + 1; q < list.size(); ++q) {
          double s = beta * list[p].second * list[q].second;
          a.at(list[p].first, list[q].first) += s;
          a.at(list[q].first, list[p].first) += s;
        }
      }
    }
  }
  for (const auto& [u, v] : g.conflict_edges) {
    a.at(u, v) += 1.0;
    a.at(v, u) += 1.0;
  }
  for (const auto& [u, v] : g.stitch_edges) {
    a.at(u, v) -= alpha;
    a.at(v, u) -= alpha;
  }
  return a;
}

double frob_inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * b.a[i];
  return s;
}

SdpResult solve_sdp(const Mat& a,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& conflict_edges,
                    const SdpOptions& opt) {
  const std::size_t n = a.n;
  SdpResult res;
  res.x = Mat::identity(n);
  res.iterations = 0;
  res.converged = true;
  res.objective = 0.0;
  if (n == 0) return res;

  double amax = 0.0;
  for (double v : a.a) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) return res;  // identity is feasible and trivially optimal

  // Two-block splitting: x lives in the box {diag = 1, conflict entries
  // >= -1/2}, z on the psd cone, scaled dual u ties them together.  Both
  // projections are exact, so the iteration converges to the global optimum.
  // rho = amax makes the iterate sequence invariant under scaling of a.
  double rho = amax;
  const double rho_lo = amax * 1e-4, rho_hi = amax * 1e4;

  Mat x = Mat::identity(n);
  Mat z = Mat::identity(n);
  Mat u(n), t(n);
  int iter = 0;
  bool ok = false;

  while (iter < opt.max_iter) {
    for (std::size_t i = 0; i < x.a.size(); ++i)
      x.a[i] = z.a[i] - u.a[i] - a.a[i] / rho;
    for (std::size_t i = 0; i < n; ++i) x.at(i, i) = 1.0;
    for (const auto& [p, q] : conflict_edges) {
      double c = std::max(x.at(p, q), -0.5);
      x.at(p, q) = c;
      x.at(q, p) = c;
    }

    // Over-relaxation; 1.6 is a safe default well inside (0, 2).
    const double orx = 1.6;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      t.a[i] = orx * x.a[i] + (1.0 - orx) * z.a[i] + u.a[i];
    Mat zn = psd_project(t, opt.exec);
    ++iter;

    double rprim = 0.0, rdual = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) {
      rprim = std::max(rprim, std::fabs(x.a[i] - zn.a[i]));
      rdual = std::max(rdual, std::fabs(zn.a[i] - z.a[i]));
      u.a[i] += orx * x.a[i] + (1.0 - orx) * z.a[i] - zn.a[i];
    }
    z = zn;
    if (rprim <= opt.tol && rdual <= opt.tol) {
      ok = true;
      break;
    }
    // Residual balancing keeps the two error terms comparable; the dual
    // variable is rescaled so u stays the scaled multiplier for the new rho.
    if (rprim > 10.0 * rdual && rho * 2.0 <= rho_hi) {
      rho *= 2.0;
      for (double& v : u.a) v *= 0.5;
    } else if (rdual > 10.0 * rprim && rho * 0.5 >= rho_lo) {
      rho *= 0.5;
      for (double& v : u.a) v *= 2.0;
    }
  }

  // The psd iterate is returned: eigenvalues are clean by construction and
  // its box error is bounded by the primal residual.
  res.x = z;
  res.iterations = iter;
  res.converged = ok;
  res.objective = frob_inner(a, z);
  return res;
}

SdpFeasibility check_sdp_feasibility(
    const Mat& x, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& conflict_edges,
    Exec exec) {
  SdpFeasibility f{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < x.n; ++i)
    f.max_diag_err = std::max(f.max_diag_err, std::fabs(x.at(i, i) - 1.0));
  for (const auto& [u, v] : conflict_edges)
    f.max_conflict_err = std::max(f.max_conflict_err, -0.5 - x.at(u, v));
  f.max_conflict_err = std::max(f.max_conflict_err, 0.0);
  f.min_eig = min_eigenvalue(x, exec);
  return f;
}

}  // namespace tpd
